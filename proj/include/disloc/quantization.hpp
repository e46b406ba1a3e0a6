// Exact (quasi-exactly solvable) states: the two conditions that make the
// Heun series a degree-n polynomial.
//
//   1. L = a^2/4 - c - 2 - |gamma| = 2n  fixes the quartic coupling lambda.
//   2. f_{n+1}(b) = 0                    a degree-(n+1) polynomial in b fixes
//                                        the allowed energies.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heun_series.hpp"
#include "params.hpp"
#include "polynomial.hpp"

namespace disloc {

struct ExactSolution {
  Channel channel;
  PhysicalConfig config;              // lambda replaced by the coupling actually used
  double lambda_nl = 0.0;
  std::vector<double> energy_roots;   // ascending
  std::vector<double> b_roots;        // matching dimensionless energies
  std::vector<std::string> branch_labels;
  int expected_root_count = 0;        // n + 1

  [[nodiscard]] std::size_t size() const { return energy_roots.size(); }
  [[nodiscard]] bool all_roots_real() const {
    return static_cast<int>(energy_roots.size()) == expected_root_count;
  }
};

/// Quartic coupling for which degree-n polynomial solutions exist:
/// lambda^2 = (2 m eta)^{3/2} (4 + 2|gamma| + 4n) / m^2 + 4 omega eta.
[[nodiscard]] inline double lambda_constraint(const PhysicalConfig& cfg, const Channel& ch) {
  validate(cfg);
  validate(ch);
  const double g = std::abs(effective_gamma(ch.l, cfg.chi, ch.k));
  const double arg = std::pow(cfg.two_m_eta(), 1.5) * (4.0 + 2.0 * g + 4.0 * ch.n) /
                         (cfg.m * cfg.m) +
                     4.0 * cfg.omega * cfg.eta;
  if (!(arg > 0.0)) throw std::domain_error("lambda_constraint: non-positive radicand");
  return std::sqrt(arg);
}

/// f_{n+1} as a polynomial in b, built by running the recurrence with b
/// carried symbolically. Its roots are the dimensionless energies.
[[nodiscard]] inline Polynomial termination_polynomial(double gamma_abs, double a, double c, int n) {
  if (n < 1) throw std::domain_error("termination_polynomial: n must be >= 1");
  const double lam = a * a / 4.0 - c - 2.0 - gamma_abs;
  const double a_shift = a * (gamma_abs + 1.0) / 2.0;
  Polynomial prev = Polynomial::constant(1.0);
  Polynomial cur = (1.0 / (1.0 + gamma_abs)) * Polynomial::linear(a_shift, -1.0);
  for (int j = 1; j <= n; ++j) {
    const double jd = j;
    const double denom = (jd + 1.0) * (jd + 1.0 + gamma_abs);
    Polynomial next = (1.0 / denom) * (Polynomial::linear(a * jd + a_shift, -1.0) * cur -
                                       (lam - 2.0 * (jd - 1.0)) * prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

[[nodiscard]] inline std::vector<std::string> branch_labels_for(int n, std::size_t count) {
  std::vector<std::string> labels;
  if (n == 1 && count == 2) return {"minus", "plus"};
  for (std::size_t i = 0; i < count; ++i) labels.push_back("root" + std::to_string(i));
  return labels;
}

/// Roots of f_{n+1}(b) = 0 for an arbitrary quartic coupling. Only when
/// lambda equals lambda_constraint do these give terminating series.
[[nodiscard]] inline ExactSolution energy_roots_for_lambda(const PhysicalConfig& cfg,
                                                           const Channel& ch, double lambda) {
  validate(ch);
  ExactSolution sol;
  sol.channel = ch;
  sol.config = cfg;
  sol.config.lambda = lambda;
  sol.lambda_nl = lambda;
  sol.expected_root_count = ch.n + 1;

  const DimensionlessSet d = to_dimensionless(sol.config, ch, 0.0);
  const Polynomial poly = termination_polynomial(d.gamma_abs(), d.a, d.c, ch.n);
  sol.b_roots = real_roots(poly);
  for (double b : sol.b_roots) sol.energy_roots.push_back(energy_from_b(cfg, ch.k, b));
  sol.branch_labels = branch_labels_for(ch.n, sol.b_roots.size());
  return sol;
}

/// General-n path: lambda fixed by the constraint, energies from f_{n+1}(b) = 0.
[[nodiscard]] inline ExactSolution energy_roots_general(const PhysicalConfig& cfg,
                                                        const Channel& ch) {
  return energy_roots_for_lambda(cfg, ch, lambda_constraint(cfg, ch));
}

/// Coefficients of the n = 1 energy condition written for B = 2 m E - k^2:
///   B^2 - P B + Q = 0.
struct GroundQuadratic {
  double p = 0.0;
  double q = 0.0;
  double discriminant = 0.0;  // P^2 - 4Q, in cancellation-free form
};

[[nodiscard]] inline GroundQuadratic ground_quadratic(const PhysicalConfig& cfg, const Channel& ch,
                                                      double lambda) {
  const double g = std::abs(effective_gamma(ch.l, cfg.chi, ch.k));
  const double root_tme = std::sqrt(cfg.two_m_eta());
  GroundQuadratic quad;
  quad.p = 4.0 * cfg.m * lambda * (2.0 + g) / root_tme;
  quad.q = 2.0 * cfg.m * lambda * lambda * (3.0 + g) * (1.0 + g) / cfg.eta -
           16.0 * (1.0 + g) * root_tme;
  // (2+g)^2 - (3+g)(1+g) = 1 removes the cancellation in P^2 - 4Q.
  quad.discriminant = 8.0 * cfg.m * lambda * lambda / cfg.eta + 64.0 * (1.0 + g) * root_tme;
  return quad;
}

/// n = 1 energies from the quadratic, ascending ("minus", "plus").
[[nodiscard]] inline ExactSolution ground_energies(const PhysicalConfig& cfg, const Channel& ch) {
  validate(cfg);
  validate(ch);
  if (ch.n != 1) throw std::domain_error("ground_energies: requires n = 1");
  ExactSolution sol;
  sol.channel = ch;
  sol.lambda_nl = lambda_constraint(cfg, ch);
  sol.config = cfg;
  sol.config.lambda = sol.lambda_nl;
  sol.expected_root_count = 2;

  const GroundQuadratic quad = ground_quadratic(cfg, ch, sol.lambda_nl);
  // larger-magnitude root first, the other from the product of roots
  const double big = 0.5 * (quad.p + std::copysign(std::sqrt(quad.discriminant), quad.p));
  const double small = quad.q / big;
  double lo = std::min(big, small), hi = std::max(big, small);

  const double s = cfg.scale();
  for (double bigb : {lo, hi}) {
    sol.energy_roots.push_back((bigb + ch.k * ch.k) / (2.0 * cfg.m));
    sol.b_roots.push_back(bigb / (2.0 * std::numbers::sqrt2 * s));
  }
  sol.branch_labels = {"minus", "plus"};
  return sol;
}

/// Closed form of the n = 1 energies: centre +/- half_gap + k^2/(2m).
struct GroundClosedForm {
  double centre = 0.0;
  double half_gap = 0.0;
  double shift = 0.0;

  [[nodiscard]] double minus() const { return centre - half_gap + shift; }
  [[nodiscard]] double plus() const { return centre + half_gap + shift; }
};

/// centre = (2+|g|) lambda_1 / sqrt(2 m eta), i.e. P / (4m);
/// half_gap = sqrt((2 m eta)^{7/2}(12+6|g|) + 16 m^4 omega eta^3) / (m (2 m eta)^{3/2}).
[[nodiscard]] inline GroundClosedForm closed_form_ground(const PhysicalConfig& cfg,
                                                         const Channel& ch) {
  validate(cfg);
  const double g = std::abs(effective_gamma(ch.l, cfg.chi, ch.k));
  const double tme = cfg.two_m_eta();
  const double m = cfg.m;
  GroundClosedForm cf;
  cf.centre = (2.0 + g) / std::sqrt(tme) *
              std::sqrt(4.0 * cfg.omega * cfg.eta + std::pow(tme, 1.5) * (8.0 + 2.0 * g) / (m * m));
  cf.half_gap = std::sqrt(std::pow(tme, 3.5) * (12.0 + 6.0 * g) +
                          16.0 * std::pow(m, 4) * cfg.omega * std::pow(cfg.eta, 3)) /
                (m * std::pow(tme, 1.5));
  cf.shift = ch.k * ch.k / (2.0 * m);
  return cf;
}

/// The frequently quoted form whose first term reads
/// (2+|g|)/sqrt(2 m eta) * sqrt(4 m^2 omega eta + (2 m eta)^{3/2}(8+2|g|)),
/// which is m times the correct centre. Only agrees with the quadratic at m = 1.
[[nodiscard]] inline GroundClosedForm closed_form_ground_uncorrected(const PhysicalConfig& cfg,
                                                                     const Channel& ch) {
  GroundClosedForm cf = closed_form_ground(cfg, ch);
  const double g = std::abs(effective_gamma(ch.l, cfg.chi, ch.k));
  const double tme = cfg.two_m_eta();
  cf.centre = (2.0 + g) / std::sqrt(tme) *
              std::sqrt(4.0 * cfg.m * cfg.m * cfg.omega * cfg.eta + std::pow(tme, 1.5) * (8.0 + 2.0 * g));
  return cf;
}

/// How far a (lambda, E) pair is from producing a terminating series.
struct TerminationCheck {
  double lambda_defect = 0.0;       // |L - 2n|
  double coefficient_defect = 0.0;  // max_{n<j<=n+extra} |f_j| / max_{j<=n} |f_j|
};

[[nodiscard]] inline TerminationCheck check_termination(const PhysicalConfig& cfg_with_lambda,
                                                        const Channel& ch, double energy,
                                                        int extra = 10) {
  const DimensionlessSet d = to_dimensionless(cfg_with_lambda, ch, energy);
  const auto seq = coefficients(d, ch.n + extra);
  TerminationCheck tc;
  tc.lambda_defect = std::abs(d.termination_parameter() - 2.0 * ch.n);
  double head = 0.0, tail = 0.0;
  for (int j = 0; j <= seq.max_index(); ++j) {
    const double v = std::abs(seq.coeffs[static_cast<std::size_t>(j)]);
    if (j <= ch.n) {
      head = std::max(head, v);
    } else {
      tail = std::max(tail, v);
    }
  }
  tc.coefficient_defect = tail / head;
  return tc;
}

struct DegeneracyRow {
  int l = 0;
  double gamma = 0.0;
  double lambda_nl = 0.0;
  std::vector<double> energies;
  std::vector<std::string> branch_labels;
};

/// One row per l in [l_min, l_max]; each row has its own constrained lambda.
[[nodiscard]] inline std::vector<DegeneracyRow> degeneracy_report(const PhysicalConfig& cfg,
                                                                  double k, int l_min, int l_max,
                                                                  int n) {
  if (l_min > l_max) throw std::invalid_argument("degeneracy_report: empty l range");
  std::vector<DegeneracyRow> rows;
  for (int l = l_min; l <= l_max; ++l) {
    const Channel ch{l, k, n};
    const ExactSolution sol = energy_roots_general(cfg, ch);
    rows.push_back({l, effective_gamma(l, cfg.chi, k), sol.lambda_nl, sol.energy_roots,
                    sol.branch_labels});
  }
  return rows;
}

}  // namespace disloc
