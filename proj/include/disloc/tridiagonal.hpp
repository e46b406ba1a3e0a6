// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection and
// eigenvectors by inverse iteration.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace disloc {

/// T has diagonal `diag` (size N) and off-diagonal `off` (size N-1).
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  [[nodiscard]] std::size_t size() const { return diag.size(); }

  /// Number of eigenvalues strictly less than x (LDL^T inertia count).
  [[nodiscard]] std::size_t count_below(double x) const {
    const double tiny = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double d = diag[0] - x;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
      if (d == 0.0) d = tiny;
      d = diag[i] - x - off[i - 1] * off[i - 1] / d;
      if (d < 0.0) ++count;
    }
    return count;
  }

  /// Gershgorin interval containing the whole spectrum.
  [[nodiscard]] std::pair<double, double> gershgorin() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(off[i - 1]);
      if (i + 1 < diag.size()) r += std::abs(off[i]);
      lo = std::min(lo, diag[i] - r);
      hi = std::max(hi, diag[i] + r);
    }
    return {lo, hi};
  }
};

/// The `count` smallest eigenvalues, ascending, each bisected until the
/// bracket cannot shrink further in floating point.
[[nodiscard]] inline std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t,
                                                            std::size_t count) {
  if (t.size() == 0 || t.off.size() + 1 != t.size())
    throw std::invalid_argument("lowest_eigenvalues: malformed tridiagonal matrix");
  count = std::min(count, t.size());
  const auto [glo, ghi] = t.gershgorin();
  const double pad = 1e-12 * std::max(std::abs(glo), std::abs(ghi)) + 1e-300;

  std::vector<double> values;
  values.reserve(count);
  double floor = glo - pad;
  for (std::size_t k = 0; k < count; ++k) {
    double lo = floor, hi = ghi + pad;
    // invariant: count_below(lo) <= k < count_below(hi)
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (t.count_below(mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return values;
}

/// Unit eigenvector for a converged eigenvalue via inverse iteration on
/// (T - sigma I), factored without pivoting; vanishing pivots are nudged.
[[nodiscard]] inline std::vector<double> eigenvector(const SymmetricTridiagonal& t, double eigenvalue) {
  const std::size_t n = t.size();
  const double norm = std::max(std::abs(t.gershgorin().first), std::abs(t.gershgorin().second));
  const double eps = std::numeric_limits<double>::epsilon();
  const double sigma = eigenvalue + 8.0 * eps * norm;
  const double guard = eps * norm;

  // LU of T - sigma I: pivots piv, multipliers mult
  std::vector<double> piv(n), mult(n > 0 ? n - 1 : 0);
  piv[0] = t.diag[0] - sigma;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(piv[i - 1]) < guard) piv[i - 1] = std::copysign(guard, piv[i - 1]);
    mult[i - 1] = t.off[i - 1] / piv[i - 1];
    piv[i] = t.diag[i] - sigma - mult[i - 1] * t.off[i - 1];
  }
  if (std::abs(piv[n - 1]) < guard) piv[n - 1] = std::copysign(guard, piv[n - 1]);

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);

  for (int sweep = 0; sweep < 4; ++sweep) {
    for (std::size_t i = 1; i < n; ++i) x[i] -= mult[i - 1] * x[i - 1];
    x[n - 1] /= piv[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - t.off[i] * x[i + 1]) / piv[i];
    double s = 0.0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    for (double& v : x) v /= s;
  }
  return x;
}

}  // namespace disloc
