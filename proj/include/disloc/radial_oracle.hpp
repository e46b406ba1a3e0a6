// Finite-difference eigensolver for the radial equation
//
//   R'' + R'/r - gamma^2/r^2 R - 2m (omega r^2 + lambda r^4 + eta r^6) R + B R = 0,
//   B = 2 m E - k^2,
//
// independent of the Heun machinery. It is used to validate every exact
// energy and to explore couplings that are not exactly solvable.
//
// Discretisation. Writing R = r^{|gamma|} F turns the operator into the
// weighted Sturm-Liouville form
//
//   -(1/w)(w F')' + 2m V F = B F,    w(r) = r^{2|gamma|+1},
//
// in which F is smooth at the origin for every gamma >= 0. A vertex-centred
// finite-volume scheme on nodes r_i = i h (i = 0..N, h = r_max/(N+1)) with
// exact cell weights and F(r_max) = 0 is second order for all gamma,
// including 0 < |gamma| < 1. The plain three-point scheme on u = sqrt(r) R
// with u(0) = 0 converges only logarithmically when gamma = 0. Symmetrising
// with the cell weights gives a symmetric tridiagonal matrix whose unknowns
// are sqrt(cell weight) * F, the discrete analogue of u.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heun_series.hpp"
#include "params.hpp"
#include "tridiagonal.hpp"

namespace disloc {

/// Raised when the domain [0, r_max] does not reach deep enough into the
/// classically forbidden region for the requested levels.
struct grid_error : std::domain_error {
  using std::domain_error::domain_error;
};

inline constexpr int kMinGridPoints = 100;

struct RadialGrid {
  double r_max = 0.0;
  int num_points = 0;

  [[nodiscard]] double spacing() const { return r_max / (num_points + 1.0); }
  [[nodiscard]] double node(int i) const { return i * spacing(); }

  void validate() const {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
      throw std::invalid_argument("RadialGrid: r_max must be positive and finite");
    if (num_points < kMinGridPoints)
      throw std::invalid_argument("RadialGrid: need at least " + std::to_string(kMinGridPoints) +
                                  " points, got " + std::to_string(num_points) +
                                  "; refine the grid");
  }
};

struct OracleSpectrum {
  std::vector<double> eigenvalues;  // energies E, ascending
  double gamma_abs = 0.0;
  double k = 0.0;
  RadialGrid grid;
  std::optional<std::vector<double>> richardson_estimate;
};

namespace detail {

inline void validate_oracle_config(const PhysicalConfig& cfg, double gamma_abs) {
  if (!(cfg.m > 0.0) || !std::isfinite(cfg.m)) throw std::domain_error("oracle: m must be > 0");
  if (!std::isfinite(cfg.omega) || !std::isfinite(cfg.lambda) || !std::isfinite(cfg.eta))
    throw std::domain_error("oracle: couplings must be finite");
  if (!(gamma_abs >= 0.0) || !std::isfinite(gamma_abs))
    throw std::domain_error("oracle: |gamma| must be finite and >= 0");
}

inline double two_m_potential(const PhysicalConfig& cfg, double r) {
  const double r2 = r * r;
  return 2.0 * cfg.m * r2 * (cfg.omega + r2 * (cfg.lambda + r2 * cfg.eta));
}

/// Effective potential of the Liouville form -u'' + W u = B u.
inline double liouville_potential(const PhysicalConfig& cfg, double gamma_abs, double r) {
  return (gamma_abs * gamma_abs - 0.25) / (r * r) + two_m_potential(cfg, r);
}

/// Symmetrised operator together with log cell weights (for eigenvectors).
struct DiscreteOperator {
  SymmetricTridiagonal matrix;
  std::vector<double> log_cell_weight;
  double h = 0.0;
};

inline DiscreteOperator build_operator(const PhysicalConfig& cfg, double gamma_abs,
                                       const RadialGrid& grid) {
  const int n_nodes = grid.num_points + 1;  // r_0 = 0 ... r_N
  const double h = grid.spacing();
  const double p = 2.0 * gamma_abs + 2.0;

  std::vector<double> log_cell(n_nodes), log_face(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double r = i * h;
    const double hi = r + 0.5 * h;
    const double lo = std::max(r - 0.5 * h, 0.0);
    log_cell[i] = p * std::log(hi) + std::log1p(-std::pow(lo / hi, p)) - std::log(p);
    log_face[i] = (p - 1.0) * std::log(hi);  // face between node i and i+1
  }

  DiscreteOperator op;
  op.h = h;
  op.matrix.diag.resize(n_nodes);
  op.matrix.off.resize(n_nodes - 1);
  for (int i = 0; i < n_nodes; ++i) {
    double stiff = std::exp(log_face[i] - log_cell[i]);
    if (i > 0) stiff += std::exp(log_face[i - 1] - log_cell[i]);
    op.matrix.diag[i] = stiff / h + two_m_potential(cfg, i * h);
    if (i + 1 < n_nodes)
      op.matrix.off[i] = -std::exp(log_face[i] - 0.5 * (log_cell[i] + log_cell[i + 1])) / h;
  }
  op.log_cell_weight = std::move(log_cell);
  return op;
}

/// Largest r in (0, r_hi] with W(r) <= B, or 0 when W > B everywhere sampled.
inline double outer_turning_point(const PhysicalConfig& cfg, double gamma_abs, double bigb,
                                  double r_hi) {
  constexpr int kSamples = 4000;
  for (int i = kSamples; i >= 1; --i) {
    const double r = r_hi * i / kSamples;
    if (liouville_potential(cfg, gamma_abs, r) <= bigb) {
      if (i == kSamples) return r_hi;
      double lo = r, hi = r_hi * (i + 1) / kSamples;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (liouville_potential(cfg, gamma_abs, mid) <= bigb) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return lo;
    }
  }
  return 0.0;
}

/// WKB decay exponent int_{r_turn}^{r_max} sqrt(W - B) dr.
inline double forbidden_decay(const PhysicalConfig& cfg, double gamma_abs, double bigb,
                              double r_max) {
  const double r_turn = outer_turning_point(cfg, gamma_abs, bigb, r_max);
  if (r_turn >= r_max) return 0.0;
  constexpr int kSteps = 2000;
  const double dr = (r_max - r_turn) / kSteps;
  double sum = 0.0;
  for (int i = 0; i <= kSteps; ++i) {
    const double r = r_turn + i * dr;
    const double wt = (i == 0 || i == kSteps) ? 0.5 : 1.0;
    sum += wt * std::sqrt(std::max(0.0, liouville_potential(cfg, gamma_abs, r) - bigb));
  }
  return sum * dr;
}

}  // namespace detail

/// Minimum WKB decay beyond the outer turning point accepted for a domain.
inline constexpr double kMinForbiddenDecay = 8.0;

/// r_max whose xi lies 7 units past the outer turning point of level B
/// (|R|^2 suppressed by roughly exp(-49) there). Requires eta > 0.
[[nodiscard]] inline double default_r_max(const PhysicalConfig& cfg, double gamma_abs, double bigb) {
  if (!(cfg.eta > 0.0)) throw std::domain_error("default_r_max: needs eta > 0; pass r_max explicitly");
  // the sextic term alone bounds the turning point from above when omega, lambda >= 0
  double r_hi = std::pow(std::max(std::abs(bigb), 1.0) / cfg.two_m_eta(), 1.0 / 6.0);
  while (detail::liouville_potential(cfg, gamma_abs, r_hi) <= bigb) r_hi *= 2.0;
  r_hi *= 2.0;
  const double r_turn = detail::outer_turning_point(cfg, gamma_abs, bigb, r_hi);
  return r_of_xi(cfg, xi_of_r(cfg, r_turn) + 7.0);
}

namespace detail {

inline std::vector<double> raw_levels(const PhysicalConfig& cfg, double gamma_abs,
                                      const RadialGrid& grid, int num_levels) {
  const DiscreteOperator op = build_operator(cfg, gamma_abs, grid);
  return lowest_eigenvalues(op.matrix, static_cast<std::size_t>(num_levels));
}

}  // namespace detail

/// Lowest `num_levels` energies of channel (|gamma|, k) on `grid`.
[[nodiscard]] inline OracleSpectrum spectrum(const PhysicalConfig& cfg, double gamma_abs, double k,
                                             int num_levels, const RadialGrid& grid) {
  detail::validate_oracle_config(cfg, gamma_abs);
  grid.validate();
  if (num_levels < 1) throw std::invalid_argument("spectrum: num_levels must be >= 1");

  const std::vector<double> bigb = detail::raw_levels(cfg, gamma_abs, grid, num_levels);
  for (std::size_t i = 1; i < bigb.size(); ++i)
    if (!(bigb[i] > bigb[i - 1]))
      throw convergence_error("spectrum: eigenvalues not strictly increasing; eigensolver failed");

  const double decay = detail::forbidden_decay(cfg, gamma_abs, bigb.back(), grid.r_max);
  if (decay < kMinForbiddenDecay) {
    throw grid_error("spectrum: r_max = " + std::to_string(grid.r_max) +
                     " is too small for level B = " + std::to_string(bigb.back()) +
                     " (forbidden-region decay " + std::to_string(decay) + " < " +
                     std::to_string(kMinForbiddenDecay) + "); increase r_max");
  }

  OracleSpectrum out;
  out.gamma_abs = gamma_abs;
  out.k = k;
  out.grid = grid;
  for (double b : bigb) out.eigenvalues.push_back((b + k * k) / (2.0 * cfg.m));
  return out;
}

/// Grid with `num_points` nodes whose r_max follows default_r_max for the
/// highest of the first `num_levels` levels (found self-consistently).
[[nodiscard]] inline RadialGrid auto_grid(const PhysicalConfig& cfg, double gamma_abs,
                                          int num_levels, int num_points) {
  detail::validate_oracle_config(cfg, gamma_abs);
  double r_max = default_r_max(cfg, gamma_abs, 0.0);
  for (int it = 0; it < 12; ++it) {
    const RadialGrid trial{r_max, std::max(num_points, 400)};
    const auto levels = detail::raw_levels(cfg, gamma_abs, trial, num_levels);
    const double next = default_r_max(cfg, gamma_abs, levels.back());
    if (next <= r_max * 1.01) break;
    r_max = next;
  }
  return RadialGrid{r_max, num_points};
}

/// spectrum() plus a Richardson (h^2) estimate from the grid with doubled spacing.
[[nodiscard]] inline OracleSpectrum spectrum_with_richardson(const PhysicalConfig& cfg,
                                                             double gamma_abs, double k,
                                                             int num_levels, const RadialGrid& grid) {
  OracleSpectrum fine = spectrum(cfg, gamma_abs, k, num_levels, grid);
  const RadialGrid coarse{grid.r_max, (grid.num_points + 1) / 2 - 1};
  const auto bigb = detail::raw_levels(cfg, gamma_abs, coarse, num_levels);
  const double ratio = coarse.spacing() / grid.spacing();
  std::vector<double> est;
  for (std::size_t i = 0; i < fine.eigenvalues.size() && i < bigb.size(); ++i) {
    const double e_coarse = (bigb[i] + k * k) / (2.0 * cfg.m);
    const double e_fine = fine.eigenvalues[i];
    est.push_back(e_fine + (e_fine - e_coarse) / (ratio * ratio - 1.0));
  }
  fine.richardson_estimate = std::move(est);
  return fine;
}

/// Accepted |E_oracle - E_exact| for a level computed on two grids:
/// max(1e-4, C h_f^2) with C = 2 |e_c - e_f| / (h_c^2 - h_f^2), twice the
/// Richardson estimate of the h^2 error constant.
[[nodiscard]] inline double agreement_tolerance(double e_coarse, double e_fine, double h_coarse,
                                                double h_fine) {
  const double c = 2.0 * std::abs(e_coarse - e_fine) / (h_coarse * h_coarse - h_fine * h_fine);
  return std::max(1e-4, c * h_fine * h_fine);
}

/// Oracle eigenfunction on nodes r_1..r_N, normalised to sum R^2 r h ~ 1.
struct OracleState {
  double energy = 0.0;
  std::vector<double> r;
  std::vector<double> radial;  // R(r_i)
};

[[nodiscard]] inline OracleState eigenstate(const PhysicalConfig& cfg, double gamma_abs, double k,
                                            int level, const RadialGrid& grid) {
  const OracleSpectrum spec = spectrum(cfg, gamma_abs, k, level + 1, grid);
  const detail::DiscreteOperator op = detail::build_operator(cfg, gamma_abs, grid);
  const double bigb = 2.0 * cfg.m * spec.eigenvalues.back() - k * k;
  const std::vector<double> y = eigenvector(op.matrix, bigb);

  OracleState st;
  st.energy = spec.eigenvalues.back();
  for (int i = 1; i <= grid.num_points; ++i) {
    const double r = grid.node(i);
    st.r.push_back(r);
    st.radial.push_back(y[static_cast<std::size_t>(i)] *
                        std::exp(gamma_abs * std::log(r) - 0.5 * op.log_cell_weight[i]));
  }
  return st;
}

struct ConvergenceTable {
  std::vector<double> spacing;
  std::vector<double> energies;
  std::vector<double> pairwise_orders;   // from errors against a reference, when given
  std::optional<double> observed_order;  // last three grids, or last pairwise order
  double extrapolated = 0.0;             // Richardson value (observed order, else 2)
  double error_constant = 0.0;           // C in |error| ~ C h^2, from the last two grids
  std::optional<bool> order_in_range;    // p in [1.5, 2.5]; only judged for |gamma| >= 1
};

namespace detail {

/// p solving (e1-e2)/(e2-e3) = (h1^p - h2^p)/(h2^p - h3^p).
inline std::optional<double> three_grid_order(double h1, double h2, double h3, double e1, double e2,
                                              double e3) {
  const double d12 = e1 - e2, d23 = e2 - e3;
  if (d23 == 0.0 || d12 == 0.0 || (d12 > 0.0) != (d23 > 0.0)) return std::nullopt;
  const double target = d12 / d23;
  auto ratio = [&](double p) {
    return (std::pow(h1, p) - std::pow(h2, p)) / (std::pow(h2, p) - std::pow(h3, p));
  };
  double lo = 0.05, hi = 12.0;
  if (target < ratio(lo) || target > ratio(hi)) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ratio(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

[[nodiscard]] inline ConvergenceTable convergence_study(const PhysicalConfig& cfg, double gamma_abs,
                                                        double k, int level,
                                                        const std::vector<RadialGrid>& grids,
                                                        std::optional<double> reference = {}) {
  if (grids.size() < 2) throw std::invalid_argument("convergence_study: need at least 2 grids");
  for (std::size_t i = 1; i < grids.size(); ++i) {
    if (!(grids[i].spacing() < grids[i - 1].spacing() * (1.0 - 1e-9)))
      throw std::invalid_argument("convergence_study: grid spacing must strictly decrease");
  }
  if (level < 0) throw std::invalid_argument("convergence_study: level must be >= 0");

  ConvergenceTable t;
  for (const auto& g : grids) {
    const OracleSpectrum s = spectrum(cfg, gamma_abs, k, level + 1, g);
    t.spacing.push_back(g.spacing());
    t.energies.push_back(s.eigenvalues.back());
  }
  const std::size_t n = grids.size();
  if (reference) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double e0 = std::abs(t.energies[i] - *reference);
      const double e1 = std::abs(t.energies[i + 1] - *reference);
      t.pairwise_orders.push_back(std::log(e0 / e1) / std::log(t.spacing[i] / t.spacing[i + 1]));
    }
    t.observed_order = t.pairwise_orders.back();
  } else if (n >= 3) {
    t.observed_order = detail::three_grid_order(t.spacing[n - 3], t.spacing[n - 2], t.spacing[n - 1],
                                                t.energies[n - 3], t.energies[n - 2], t.energies[n - 1]);
  }

  const double hp = t.spacing[n - 2], hl = t.spacing[n - 1];
  const double ep = t.energies[n - 2], el = t.energies[n - 1];
  const double p = t.observed_order.value_or(2.0);
  t.extrapolated = el + (el - ep) / (std::pow(hp / hl, p) - 1.0);
  t.error_constant = std::abs(ep - el) / (hp * hp - hl * hl);
  if (gamma_abs >= 1.0 && t.observed_order)
    t.order_in_range = *t.observed_order >= 1.5 && *t.observed_order <= 2.5;
  return t;
}

}  // namespace disloc
