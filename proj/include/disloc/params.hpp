// Physical and channel parameters of the sextic oscillator in a screw
// dislocation, and the exact maps onto the dimensionless radial problem.
//
// Units: c = hbar = 1 throughout. Note that `omega` is the raw coefficient of
// r^2 in V(r) = omega r^2 + lambda r^4 + eta r^6. It is NOT an angular
// frequency; there is no (1/2) m Omega^2 convention anywhere in this library.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace disloc {

/// Oscillator and medium parameters in natural units.
struct PhysicalConfig {
  double m = 1.0;       // mass
  double omega = 0.0;   // r^2 coefficient (not a frequency)
  double lambda = 0.0;  // r^4 coefficient
  double eta = 0.5;     // r^6 coefficient, must be > 0
  double chi = 0.0;     // dislocation (torsion) parameter, a length

  /// Mass-scaled sextic coupling 2 m eta; every length scale derives from it.
  [[nodiscard]] double two_m_eta() const { return 2.0 * m * eta; }

  /// (2 m eta)^{1/4}, the inverse squared length that appears in xi(r).
  [[nodiscard]] double scale() const { return std::pow(two_m_eta(), 0.25); }
};

/// Conserved quantum numbers of the separated wavefunction
/// psi = exp(i l phi + i k z) R(r), plus the polynomial level n >= 1.
struct Channel {
  int l = 0;
  double k = 0.0;
  int n = 1;
};

/// The four parameters of the dimensionless radial equation in xi.
struct DimensionlessSet {
  double gamma = 0.0;  // l - chi k
  double a = 0.0;      // quartic coupling
  double b = 0.0;      // energy
  double c = 0.0;      // quadratic coupling

  [[nodiscard]] double gamma_abs() const { return std::abs(gamma); }

  /// Termination parameter a^2/4 - c - 2 - |gamma|; degree-n polynomials need 2n.
  [[nodiscard]] double termination_parameter() const {
    return a * a / 4.0 - c - 2.0 - gamma_abs();
  }
};

inline void validate(const PhysicalConfig& cfg) {
  if (!(cfg.m > 0.0) || !std::isfinite(cfg.m)) {
    throw std::domain_error("mass m must be positive and finite, got " + std::to_string(cfg.m));
  }
  if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta)) {
    throw std::domain_error("sextic coupling eta must be positive and finite, got " +
                            std::to_string(cfg.eta));
  }
  if (!(cfg.omega >= 0.0) || !std::isfinite(cfg.omega)) {
    throw std::domain_error("quadratic coupling omega must be >= 0 and finite, got " +
                            std::to_string(cfg.omega));
  }
  if (!std::isfinite(cfg.lambda) || !std::isfinite(cfg.chi)) {
    throw std::domain_error("lambda and chi must be finite");
  }
}

inline void validate(const Channel& ch) {
  if (ch.n < 1) {
    throw std::domain_error("polynomial level n must be >= 1, got " + std::to_string(ch.n));
  }
  if (!std::isfinite(ch.k)) throw std::domain_error("momentum k must be finite");
}

/// gamma = l - chi k. The dislocation couples the angular and axial momenta.
[[nodiscard]] constexpr double effective_gamma(int l, double chi, double k) {
  return static_cast<double>(l) - chi * k;
}

/// Map a configuration, channel and energy onto (gamma, a, b, c).
[[nodiscard]] inline DimensionlessSet to_dimensionless(const PhysicalConfig& cfg,
                                                       const Channel& ch, double energy) {
  validate(cfg);
  const double two_m_eta = cfg.two_m_eta();
  const double s = std::pow(two_m_eta, 0.25);
  DimensionlessSet d;
  d.gamma = effective_gamma(ch.l, cfg.chi, ch.k);
  d.a = 2.0 * cfg.m * cfg.lambda / (std::numbers::sqrt2 * s * s * s);
  d.b = (2.0 * cfg.m * energy - ch.k * ch.k) / (2.0 * std::numbers::sqrt2 * s);
  d.c = cfg.m * cfg.omega / std::sqrt(two_m_eta);
  return d;
}

/// Energy corresponding to a dimensionless b in channel k: inverse of the b map.
[[nodiscard]] inline double energy_from_b(const PhysicalConfig& cfg, double k, double b) {
  const double s = cfg.scale();
  return (2.0 * std::numbers::sqrt2 * s * b + k * k) / (2.0 * cfg.m);
}

/// xi = (2 m eta)^{1/4} r^2 / sqrt(2).
[[nodiscard]] inline double xi_of_r(const PhysicalConfig& cfg, double r) {
  if (!(r >= 0.0)) throw std::domain_error("xi_of_r: radius must be >= 0");
  return cfg.scale() * r * r / std::numbers::sqrt2;
}

[[nodiscard]] inline double r_of_xi(const PhysicalConfig& cfg, double xi) {
  if (!(xi >= 0.0)) throw std::domain_error("r_of_xi: xi must be >= 0");
  return std::sqrt(std::numbers::sqrt2 * xi / cfg.scale());
}

}  // namespace disloc
