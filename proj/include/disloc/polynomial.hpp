// Dense real polynomials in monomial form and real-root isolation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace disloc {

/// p(x) = sum_i coeffs[i] x^i. Small degree only (monomial basis).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(double v) { return Polynomial({v}); }
  /// alpha + beta x
  static Polynomial linear(double alpha, double beta) { return Polynomial({alpha, beta}); }

  [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  [[nodiscard]] double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) r[i] += p.coeffs_[i];
    for (std::size_t i = 0; i < q.coeffs_.size(); ++i) r[i] += q.coeffs_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-1.0) * q; }
  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> r(p.coeffs_);
    for (double& c : r) c *= s;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> r(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) r[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  }
  std::vector<double> coeffs_;
};

namespace detail {

inline double bisect_root(const Polynomial& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double newton_polish(const Polynomial& p, const Polynomial& dp, double x) {
  for (int it = 0; it < 3; ++it) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double step = p(x) / d;
    if (!std::isfinite(step)) break;
    const double nx = x - step;
    if (std::abs(p(nx)) >= std::abs(p(x))) break;
    x = nx;
  }
  return x;
}

}  // namespace detail

/// All real roots of p, ascending. Roots are isolated between consecutive
/// real critical points (roots of p', found recursively) and the Cauchy bound,
/// then refined by bisection and a guarded Newton polish. Even-multiplicity
/// roots touching zero are reported when |p| vanishes at a critical point.
[[nodiscard]] inline std::vector<double> real_roots(const Polynomial& p) {
  const int deg = p.degree();
  if (deg < 1) return {};
  const auto c = p.coeffs();
  if (deg == 1) return {-c[0] / c[1]};

  double bound = 0.0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[i] / c[deg]));
  bound += 1.0;

  const Polynomial dp = p.derivative();
  std::vector<double> pts{-bound};
  for (double x : real_roots(dp))
    if (x > -bound && x < bound) pts.push_back(x);
  pts.push_back(bound);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    const double flo = p(lo), fhi = p(hi);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if ((flo < 0.0) != (fhi < 0.0) && fhi != 0.0) {
      roots.push_back(detail::newton_polish(p, dp, detail::bisect_root(p, lo, hi)));
    }
  }
  if (p(pts.back()) == 0.0) roots.push_back(pts.back());
  // tangential (double) roots at interior critical points
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double x = pts[i];
    // rounding bound of Horner evaluation at x
    double mag = 0.0;
    for (int j = deg; j >= 0; --j) mag = mag * std::abs(x) + std::abs(c[j]);
    if (std::abs(p(x)) <= 8.0 * deg * std::numeric_limits<double>::epsilon() * mag) {
      bool seen = false;
      for (double r : roots) seen = seen || std::abs(r - x) <= 1e-9 * std::max(1.0, std::abs(x));
      if (!seen) roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace disloc
