// Power-series solutions of the biconfluent Heun equation
//
//   H'' + [(|g|+1)/xi - a - 2 xi] H' + [L - (a(|g|+1) - 2b)/(2 xi)] H = 0,
//   L = a^2/4 - c - 2 - |g|,
//
// about the regular singular point xi = 0, with H = sum_j f_j xi^j.
//
// Substituting the series and collecting xi^j gives, for j >= 1,
//
//   (j+1)(j+1+|g|) f_{j+1} = [a j + a(|g|+1)/2 - b] f_j - [L - 2(j-1)] f_{j-1},
//
// and (1+|g|) f_1 = (a(|g|+1)/2 - b) f_0 at j = 0. The -b in the f_j
// coefficient is required for j >= 1 as well; dropping it gives a recurrence
// that does not solve the ODE and does not reproduce the n = 1 energy
// quadratic. See docs/derivation.md.
//
// With L = 2n the f_{j-1} term switches off at j = n+1, so once f_{n+1} = 0
// every later coefficient vanishes and H is a degree-n polynomial.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "params.hpp"

namespace disloc {

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HeunParams {
  double gamma_abs = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  [[nodiscard]] double termination_parameter() const { return a * a / 4.0 - c - 2.0 - gamma_abs; }
};

/// Relative threshold under which a coefficient counts as zero for truncation.
inline constexpr double kTruncationTolerance = 1e-10;

struct HeunCoefficientSequence {
  HeunParams params;
  std::vector<long double> coeffs;       // f_0 ... f_K, f_0 = 1
  std::optional<int> truncation_index;   // polynomial degree when the series terminates

  [[nodiscard]] int max_index() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Coefficients that take part in evaluation.
  [[nodiscard]] std::span<const long double> active() const {
    const std::size_t count = truncation_index ? static_cast<std::size_t>(*truncation_index) + 1
                                               : coeffs.size();
    return std::span<const long double>(coeffs).first(count);
  }
};

/// Smallest n with |f_{n+1}|, |f_{n+2}| < tol * max_{j<=n} |f_j|.
[[nodiscard]] inline std::optional<int> detect_truncation(std::span<const long double> f,
                                                          double tol = kTruncationTolerance) {
  long double running_max = 0.0L;
  for (std::size_t n = 0; n + 2 < f.size(); ++n) {
    running_max = std::max(running_max, std::abs(f[n]));
    if (std::abs(f[n + 1]) < tol * running_max && std::abs(f[n + 2]) < tol * running_max)
      return static_cast<int>(n);
  }
  return std::nullopt;
}

[[nodiscard]] inline HeunCoefficientSequence coefficients(double gamma_abs, double a, double b,
                                                          double c, int K) {
  if (!(gamma_abs >= 0.0)) throw std::domain_error("coefficients: |gamma| must be >= 0");
  if (K < 2) throw std::invalid_argument("coefficients: need K >= 2, got " + std::to_string(K));

  HeunCoefficientSequence seq;
  seq.params = {gamma_abs, a, b, c};
  // long double throughout: for a < 0 the series alternates and its terms
  // exceed the sum by many orders near xi = 5
  const long double lam = seq.params.termination_parameter();
  const long double a_shift = a * (gamma_abs + 1.0L) / 2.0L - b;

  auto& f = seq.coeffs;
  f.resize(static_cast<std::size_t>(K) + 1);
  f[0] = 1.0L;
  f[1] = a_shift / (1.0L + gamma_abs);
  for (int j = 1; j < K; ++j) {
    const long double jd = j;
    const long double denom = (jd + 1.0L) * (jd + 1.0L + gamma_abs);
    f[j + 1] = ((a * jd + a_shift) * f[j] - (lam - 2.0L * (jd - 1.0L)) * f[j - 1]) / denom;
  }
  // A decaying infinite series also produces runs of tiny coefficients; a real
  // polynomial of degree n additionally needs L = 2n.
  const auto n = detect_truncation(f);
  if (n && std::abs(lam - 2.0L * *n) <= 1e-8L * std::max(1.0L, std::abs(lam))) seq.truncation_index = n;
  return seq;
}

[[nodiscard]] inline HeunCoefficientSequence coefficients(const DimensionlessSet& d, int K) {
  return coefficients(d.gamma_abs(), d.a, d.b, d.c, K);
}

struct HeunValue {
  double h = 0.0;
  double dh = 0.0;
  double d2h = 0.0;
};

/// H, H', H'' summed term by term in ascending powers.
[[nodiscard]] inline HeunValue evaluate_with_derivatives(const HeunCoefficientSequence& seq,
                                                         double xi) {
  const auto f = seq.active();
  long double h = 0.0L, dh = 0.0L, d2h = 0.0L;
  long double p = 1.0L;   // xi^j
  long double p1 = 0.0L;  // xi^{j-1}
  long double p2 = 0.0L;  // xi^{j-2}
  for (std::size_t j = 0; j < f.size(); ++j) {
    const long double jd = static_cast<long double>(j);
    h += f[j] * p;
    dh += jd * f[j] * p1;
    d2h += jd * (jd - 1.0L) * f[j] * p2;
    p2 = p1;
    p1 = p;
    p *= xi;
  }
  return {static_cast<double>(h), static_cast<double>(dh), static_cast<double>(d2h)};
}

/// Sum of f_j xi^j. Untruncated sequences must have converged at xi.
[[nodiscard]] inline double evaluate(const HeunCoefficientSequence& seq, double xi) {
  if (!(xi >= 0.0)) throw std::domain_error("evaluate: xi must be >= 0");
  const auto f = seq.active();
  long double sum = 0.0L;
  long double p = 1.0L;
  long double last = 0.0L;
  for (long double fj : f) {
    last = fj * p;
    sum += last;
    p *= xi;
  }
  if (!seq.truncation_index && std::abs(last) > 1e-12 * std::abs(sum)) {
    throw convergence_error("evaluate: Heun series not converged at xi = " + std::to_string(xi) +
                            " with " + std::to_string(f.size()) + " terms");
  }
  return static_cast<double>(sum);
}

/// Residual of the Heun ODE at xi > 0, divided by the largest of its six terms.
[[nodiscard]] inline double ode_residual(const HeunCoefficientSequence& seq, double xi) {
  if (!(xi > 0.0)) throw std::domain_error("ode_residual: xi must be > 0 (singular point)");
  const auto& p = seq.params;
  const HeunValue v = evaluate_with_derivatives(seq, xi);
  const double terms[] = {
      v.d2h,
      (p.gamma_abs + 1.0) / xi * v.dh,
      -p.a * v.dh,
      -2.0 * xi * v.dh,
      p.termination_parameter() * v.h,
      -(p.a * (p.gamma_abs + 1.0) - 2.0 * p.b) / (2.0 * xi) * v.h,
  };
  double sum = 0.0, scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

}  // namespace disloc
