// Test-only reference computations. Nothing here calls into the library's
// recurrence, polynomial or root-finding code.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "disloc/params.hpp"

namespace oracle {

/// n = 1 energies by the textbook quadratic formula in long double, with the
/// coefficients written out from the energy condition in B = 2mE - k^2.
inline std::pair<double, double> ground_energies(double m, double omega, double eta, double gamma_abs,
                                                 double k) {
  using ld = long double;
  const ld g = gamma_abs;
  const ld tme = 2.0L * m * eta;
  const ld lam = std::sqrt(std::pow(tme, 1.5L) / (ld(m) * m) * (8.0L + 2.0L * g) + 4.0L * omega * eta);
  const ld p = 4.0L * m * lam * (2.0L + g) / std::sqrt(tme);
  const ld q = 2.0L * m * lam * lam / eta * (3.0L + g) * (1.0L + g) - 16.0L * (1.0L + g) * std::sqrt(tme);
  const ld disc = std::sqrt(p * p - 4.0L * q);
  const ld b_lo = (p - disc) / 2.0L, b_hi = (p + disc) / 2.0L;
  return {static_cast<double>((b_lo + ld(k) * k) / (2.0L * m)),
          static_cast<double>((b_hi + ld(k) * k) / (2.0L * m))};
}

/// f_{n+1}(b) by a direct long-double run of the three-term recurrence.
inline long double f_next(double g, double a, double b, double c, int n) {
  using ld = long double;
  const ld lam = ld(a) * a / 4.0L - c - 2.0L - g;
  ld prev = 1.0L;
  ld cur = (ld(a) * (g + 1.0L) / 2.0L - b) / (1.0L + g);
  for (int j = 1; j <= n; ++j) {
    const ld next = ((ld(a) * j + ld(a) * (g + 1.0L) / 2.0L - b) * cur - (lam - 2.0L * (j - 1)) * prev) /
                    ((j + 1.0L) * (j + 1.0L + g));
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Monomial coefficients of f_{n+1}(b) (degree n+1) by sampling at n+2 points
/// and solving the Vandermonde system (Gaussian elimination, long double).
inline std::vector<long double> sampled_polynomial(double g, double a, double c, int n) {
  const int deg = n + 1;
  const int size = deg + 1;
  std::vector<std::vector<long double>> mat(size, std::vector<long double>(size + 1));
  for (int i = 0; i < size; ++i) {
    const long double x = -1.0L + 2.0L * i;
    long double p = 1.0L;
    for (int j = 0; j < size; ++j) {
      mat[i][j] = p;
      p *= x;
    }
    mat[i][size] = f_next(g, a, static_cast<double>(x), c, n);
  }
  for (int col = 0; col < size; ++col) {
    int piv = col;
    for (int r = col + 1; r < size; ++r)
      if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
    std::swap(mat[col], mat[piv]);
    for (int r = 0; r < size; ++r) {
      if (r == col) continue;
      const long double f = mat[r][col] / mat[col][col];
      for (int j = col; j <= size; ++j) mat[r][j] -= f * mat[col][j];
    }
  }
  std::vector<long double> coeffs(size);
  for (int i = 0; i < size; ++i) coeffs[i] = mat[i][size] / mat[i][i];
  return coeffs;
}

/// Three real roots of c0 + c1 x + c2 x^2 + c3 x^3 (trigonometric method), ascending.
inline std::array<double, 3> cubic_real_roots(const std::vector<long double>& c) {
  using ld = long double;
  const ld a = c[2] / c[3], b = c[1] / c[3], d = c[0] / c[3];
  const ld p = b - a * a / 3.0L;
  const ld q = 2.0L * a * a * a / 27.0L - a * b / 3.0L + d;
  const ld r = std::sqrt(-p / 3.0L);
  const ld phi = std::acos(std::clamp(3.0L * q / (2.0L * p * r), -1.0L, 1.0L));
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k)
    roots[k] = static_cast<double>(2.0L * r * std::cos((phi - 2.0L * std::numbers::pi_v<ld> * k) / 3.0L) -
                                   a / 3.0L);
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Random valid configurations for sweeps.
struct Sweep {
  std::mt19937_64 rng;
  explicit Sweep(unsigned long long seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  disloc::PhysicalConfig config() {
    disloc::PhysicalConfig cfg;
    cfg.m = uniform(0.5, 2.0);
    cfg.omega = uniform(0.0, 2.0);
    cfg.eta = uniform(0.2, 2.0);
    cfg.chi = uniform(-1.0, 1.0);
    return cfg;
  }
  disloc::Channel channel(int n) { return {integer(-3, 3), uniform(-2.0, 2.0), n}; }
};

}  // namespace oracle
