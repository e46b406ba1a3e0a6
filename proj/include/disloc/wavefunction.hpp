// Exact bound states
//
//   R(xi) = N exp(-xi^2/2) exp(-a xi/2) xi^{|gamma|/2} H(xi),
//   psi(r, phi, z) = exp(i l phi + i k z) R(r),
//
// with H the terminating Heun polynomial. Normalisation uses the measure
// r dr of the dislocated metric (its determinant is r^2 for every chi).
#pragma once

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heun_series.hpp"
#include "params.hpp"
#include "polynomial.hpp"
#include "quantization.hpp"
#include "radial_oracle.hpp"

namespace disloc {

struct BoundState {
  Channel channel;
  PhysicalConfig config;  // lambda is the constrained coupling
  double energy = 0.0;
  std::string branch;
  DimensionlessSet dimensionless;
  HeunCoefficientSequence heun;
  double norm_constant = 1.0;
  int node_count = 0;
};

/// Number of sign changes of H on (0, inf), from the real roots of the polynomial.
[[nodiscard]] inline int count_positive_nodes(const HeunCoefficientSequence& seq) {
  const auto f = seq.active();
  const Polynomial poly(std::vector<double>(f.begin(), f.end()));
  int count = 0;
  for (double x : real_roots(poly)) {
    // skip even-multiplicity touch points: require an actual sign change
    const double dx = 1e-7 * std::max(1.0, std::abs(x));
    if (x > 0.0 && (poly(x - dx) < 0.0) != (poly(x + dx) < 0.0)) ++count;
  }
  return count;
}

[[nodiscard]] inline BoundState assemble(const ExactSolution& sol, std::size_t root_index) {
  if (root_index >= sol.size())
    throw std::out_of_range("assemble: root index " + std::to_string(root_index) + " but only " +
                            std::to_string(sol.size()) + " roots");
  BoundState st;
  st.channel = sol.channel;
  st.config = sol.config;
  st.energy = sol.energy_roots[root_index];
  st.branch = sol.branch_labels[root_index];
  st.dimensionless = to_dimensionless(sol.config, sol.channel, st.energy);
  st.heun = coefficients(st.dimensionless, sol.channel.n + 4);
  if (!st.heun.truncation_index) {
    throw convergence_error("assemble: Heun series does not terminate for E = " +
                            std::to_string(st.energy) + "; solution is inconsistent");
  }
  st.node_count = count_positive_nodes(st.heun);
  return st;
}

/// R as a function of xi, including the normalisation constant.
[[nodiscard]] inline double radial_value_xi(const BoundState& st, double xi) {
  const auto& d = st.dimensionless;
  const double h = evaluate(st.heun, xi);
  const double prefactor = d.gamma_abs() == 0.0 ? 1.0 : std::pow(xi, 0.5 * d.gamma_abs());
  return st.norm_constant * std::exp(-0.5 * xi * xi - 0.5 * d.a * xi) * prefactor * h;
}

[[nodiscard]] inline double radial_value(const BoundState& st, double r) {
  return radial_value_xi(st, xi_of_r(st.config, r));
}

/// Outermost xi where xi^2 + a xi + c - b/xi + gamma^2/(4 xi^2) changes sign,
/// i.e. the classical turning point of the dimensionless problem.
[[nodiscard]] inline double xi_turning_point(const DimensionlessSet& d) {
  const Polynomial quartic({d.gamma * d.gamma / 4.0, -d.b, d.c, d.a, 1.0});
  double turn = 0.0;
  for (double x : real_roots(quartic)) turn = std::max(turn, x);
  return turn;
}

/// Integration cutoff: eight xi-units beyond the turning point.
[[nodiscard]] inline double xi_cutoff(const DimensionlessSet& d) {
  return xi_turning_point(d) + 8.0;
}

inline constexpr int kDefaultQuadraturePoints = 400;

/// int_0^inf |R(r)|^2 r dr for the state as it stands (norm_constant included).
[[nodiscard]] inline double norm_integral(const BoundState& st,
                                          int quadrature_points = kDefaultQuadraturePoints) {
  if (quadrature_points < 20) throw std::invalid_argument("norm_integral: need >= 20 points");
  const double xi_cut = xi_cutoff(st.dimensionless);
  const int panels = quadrature_points / 20;
  // xi = xi_cut t^4 flattens the xi^{|gamma|} behaviour at the origin
  auto integrand = [&](double t) {
    const double t2 = t * t;
    const double xi = xi_cut * t2 * t2;
    const double value = radial_value_xi(st, xi);
    return value * value * 4.0 * xi_cut * t2 * t;
  };
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = static_cast<double>(p) / panels;
    const double hi = static_cast<double>(p + 1) / panels;
    sum += boost::math::quadrature::gauss<double, 20>::integrate(integrand, lo, hi);
  }
  if (!std::isfinite(sum)) throw std::domain_error("norm_integral: non-finite integrand");
  // r dr = dxi / (sqrt(2) (2 m eta)^{1/4})
  return sum / (std::numbers::sqrt2 * st.config.scale());
}

[[nodiscard]] inline BoundState normalize(BoundState st,
                                          int quadrature_points = kDefaultQuadraturePoints) {
  st.norm_constant = 1.0;
  const double integral = norm_integral(st, quadrature_points);
  if (!(integral > 0.0)) throw std::domain_error("normalize: zero norm");
  st.norm_constant = 1.0 / std::sqrt(integral);
  return st;
}

/// Largest relative residual of the radial equation over `r_samples`, with R'
/// and R'' taken analytically. Each sample is scaled by its largest term.
[[nodiscard]] inline double radial_ode_residual(const BoundState& st,
                                                const std::vector<double>& r_samples) {
  const auto& cfg = st.config;
  const auto& d = st.dimensionless;
  const double g = d.gamma_abs();
  const double s = cfg.scale();
  const double bigb = 2.0 * cfg.m * st.energy - st.channel.k * st.channel.k;
  double worst = 0.0;
  for (double r : r_samples) {
    if (!(r > 0.0)) throw std::domain_error("radial_ode_residual: samples must be > 0");
    const double xi = xi_of_r(cfg, r);
    const double dxi = std::numbers::sqrt2 * s * r;
    const double d2xi = std::numbers::sqrt2 * s;
    const double phi1 = -xi - 0.5 * d.a + 0.5 * g / xi;
    const double phi2 = -1.0 - 0.5 * g / (xi * xi);
    const HeunValue hv = evaluate_with_derivatives(st.heun, xi);
    // common factor N exp(phi) dropped from R and its derivatives
    const double r_xi = phi1 * hv.h + hv.dh;
    const double r_xixi = (phi2 + phi1 * phi1) * hv.h + 2.0 * phi1 * hv.dh + hv.d2h;
    const double rad = hv.h;
    const double rad_r = r_xi * dxi;
    const double rad_rr = r_xixi * dxi * dxi + r_xi * d2xi;
    const double r2 = r * r;
    const double terms[] = {
        rad_rr,
        rad_r / r,
        -g * g / r2 * rad,
        -2.0 * cfg.m * cfg.omega * r2 * rad,
        -2.0 * cfg.m * cfg.lambda * r2 * r2 * rad,
        -2.0 * cfg.m * cfg.eta * r2 * r2 * r2 * rad,
        bigb * rad,
    };
    double sum = 0.0, scale = 0.0;
    for (double t : terms) {
      sum += t;
      scale = std::max(scale, std::abs(t));
    }
    if (scale > 0.0) worst = std::max(worst, std::abs(sum) / scale);
  }
  return worst;
}

struct WaveSample {
  double r = 0.0;
  double xi = 0.0;
  double radial = 0.0;  // R(r), normalised
  double u = 0.0;       // sqrt(r) R(r)
};

/// Samples on r_i = i h, i = 1..N, h = r_max/(N+1).
[[nodiscard]] inline std::vector<WaveSample> export_samples(const BoundState& st,
                                                            const RadialGrid& grid) {
  if (grid.num_points < 1 || !(grid.r_max > 0.0))
    throw std::invalid_argument("export_samples: grid needs r_max > 0 and at least one point");
  std::vector<WaveSample> rows;
  rows.reserve(static_cast<std::size_t>(grid.num_points));
  for (int i = 1; i <= grid.num_points; ++i) {
    const double r = grid.node(i);
    const double xi = xi_of_r(st.config, r);
    const double value = radial_value_xi(st, xi);
    rows.push_back({r, xi, value, std::sqrt(r) * value});
  }
  return rows;
}

}  // namespace disloc
