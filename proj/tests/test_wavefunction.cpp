#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "disloc/quantization.hpp"
#include "disloc/radial_oracle.hpp"
#include "disloc/wavefunction.hpp"
#include "oracles.hpp"

using namespace disloc;

namespace {
PhysicalConfig bench_config() { return {1.0, 0.0, 0.0, 0.5, 0.0}; }

BoundState bench_state(std::size_t root) {
  return normalize(assemble(ground_energies(bench_config(), {0, 0.0, 1}), root));
}

// The n = 1 closed form e^{-xi^2/2} e^{-a xi/2} xi^{|g|/2} (1 + f1 xi).
double closed_form_n1(const DimensionlessSet& d, double xi) {
  const double g = d.gamma_abs();
  const double f1 = d.a / 2.0 - d.b / (1.0 + g);
  return std::exp(-0.5 * xi * xi - 0.5 * d.a * xi) * std::pow(xi, 0.5 * g) * (1.0 + f1 * xi);
}
}  // namespace

TEST(Assemble, BenchmarkPolynomials) {
  const auto minus = assemble(ground_energies(bench_config(), {0, 0.0, 1}), 0);
  ASSERT_EQ(minus.heun.truncation_index.value_or(-1), 1);
  EXPECT_DOUBLE_EQ(static_cast<double>(minus.heun.coeffs[0]), 1.0);
  EXPECT_NEAR(static_cast<double>(minus.heun.coeffs[1]), 0.44948974278317810, 1e-13);
  EXPECT_EQ(minus.node_count, 0);
  EXPECT_EQ(minus.branch, "minus");

  const auto plus = assemble(ground_energies(bench_config(), {0, 0.0, 1}), 1);
  EXPECT_NEAR(static_cast<double>(plus.heun.coeffs[1]), -4.4494897427831781, 1e-13);
  EXPECT_EQ(plus.node_count, 1);
  EXPECT_EQ(plus.branch, "plus");
}

TEST(Assemble, Errors) {
  const auto sol = ground_energies(bench_config(), {0, 0.0, 1});
  EXPECT_THROW((void)assemble(sol, 2), std::out_of_range);
  const auto off = energy_roots_for_lambda(bench_config(), {0, 0.0, 1}, 2.5);
  ASSERT_FALSE(off.energy_roots.empty());
  EXPECT_THROW((void)assemble(off, 0), convergence_error);
}

TEST(Assemble, MatchesClosedFormForNEqualOne) {
  oracle::Sweep sweep(2);
  for (int t = 0; t < 20; ++t) {
    const PhysicalConfig cfg = sweep.config();
    const auto sol = ground_energies(cfg, sweep.channel(1));
    for (std::size_t i = 0; i < 2; ++i) {
      const auto st = assemble(sol, i);
      for (int j = 0; j <= 100; ++j) {
        const double xi = 0.1 * j;
        const double ref = closed_form_n1(st.dimensionless, xi);
        EXPECT_NEAR(radial_value_xi(st, xi), ref, 1e-12 * std::max(1.0, std::abs(ref))) << "xi=" << xi;
      }
    }
  }
}

TEST(Assemble, NodeCountsFollowEnergyOrder) {
  oracle::Sweep sweep(9);
  for (int t = 0; t < 100; ++t) {
    const auto sol = ground_energies(sweep.config(), sweep.channel(1));
    EXPECT_EQ(assemble(sol, 0).node_count, 0);
    EXPECT_EQ(assemble(sol, 1).node_count, 1);
  }
}

TEST(Assemble, HigherRootsHaveIncreasingNodeCounts) {
  oracle::Sweep sweep(19);
  for (int t = 0; t < 20; ++t) {
    const Channel ch = sweep.channel(sweep.integer(2, 4));
    const auto sol = energy_roots_general(sweep.config(), ch);
    for (std::size_t i = 0; i < sol.size(); ++i) EXPECT_EQ(assemble(sol, i).node_count, static_cast<int>(i));
  }
}

TEST(RadialValue, BehaviourAtOrigin) {
  const auto st = bench_state(0);
  EXPECT_DOUBLE_EQ(radial_value(st, 0.0), st.norm_constant);
  PhysicalConfig cfg = bench_config();
  const auto st1 = normalize(assemble(ground_energies(cfg, {1, 0.0, 1}), 0));
  EXPECT_EQ(radial_value(st1, 0.0), 0.0);
  EXPECT_GT(radial_value(st1, 0.1), 0.0);
}

TEST(Normalize, UnitNormAndQuadratureConvergence) {
  oracle::Sweep sweep(4);
  for (int t = 0; t < 10; ++t) {
    const auto sol = energy_roots_general(sweep.config(), sweep.channel(sweep.integer(1, 3)));
    for (std::size_t i = 0; i < sol.size(); ++i) {
      const auto st = assemble(sol, i);
      const auto a = normalize(st, 400);
      const auto b = normalize(st, 800);
      EXPECT_LT(std::abs(a.norm_constant - b.norm_constant) / b.norm_constant, 1e-8);
      EXPECT_NEAR(norm_integral(a, 800), 1.0, 1e-8);
    }
  }
}

TEST(Normalize, ProjectiveInvariance) {
  auto st = assemble(ground_energies(bench_config(), {0, 0.0, 1}), 1);
  const auto ref = normalize(st);
  st.norm_constant = 3.0;
  const auto again = normalize(st);
  EXPECT_DOUBLE_EQ(again.norm_constant, ref.norm_constant);
  EXPECT_DOUBLE_EQ(radial_value(again, 0.8), radial_value(ref, 0.8));
}

TEST(Normalize, GaussianClosedForm) {
  // a = 0, gamma = 0, c = -2: L = 0 and H = 1 exactly. With s = 1,
  // int e^{-xi^2} r dr = int_0^inf e^{-xi^2} dxi / sqrt 2 = sqrt(pi) / (2 sqrt 2).
  BoundState st;
  st.config = bench_config();
  st.channel = {0, 0.0, 1};
  st.dimensionless = {0.0, 0.0, 0.0, -2.0};
  st.heun = coefficients(st.dimensionless, 6);
  ASSERT_EQ(st.heun.truncation_index.value_or(-1), 0);
  const double expected = std::sqrt(std::numbers::pi) / (2.0 * std::numbers::sqrt2);
  EXPECT_NEAR(norm_integral(st), expected, 1e-10 * expected);
  EXPECT_NEAR(normalize(st).norm_constant, 1.0 / std::sqrt(expected), 1e-10);
}

TEST(Normalize, SquareIntegrableTail) {
  for (std::size_t root : {0u, 1u}) {
    const auto st = bench_state(root);
    const double xi_cut = xi_cutoff(st.dimensionless);
    auto density = [&](double xi) {
      const double r = r_of_xi(st.config, xi);
      const double v = radial_value_xi(st, xi);
      return v * v * r;
    };
    EXPECT_LT(density(xi_cut) / density(xi_cut - 1.0), 1e-3);
    EXPECT_LT(density(xi_cut), 1e-30);
  }
}

TEST(RadialResidual, BenchmarkStates) {
  const std::vector<double> radii{0.2, 0.7, 1.5};
  EXPECT_LT(radial_ode_residual(bench_state(0), radii), 1e-8);
  EXPECT_LT(radial_ode_residual(bench_state(1), radii), 1e-8);
}

TEST(RadialResidual, SensitiveToEnergy) {
  auto st = bench_state(0);
  st.energy += 1e-4;
  EXPECT_GT(radial_ode_residual(st, {0.2, 0.7, 1.5}), 1e-6);
}

TEST(RadialResidual, SmallAtNodeOfExcitedState) {
  const auto st = bench_state(1);
  const double xi_node = -1.0 / static_cast<double>(st.heun.coeffs[1]);
  const double r_node = r_of_xi(st.config, xi_node);
  EXPECT_NEAR(radial_value(st, r_node), 0.0, 1e-14);
  EXPECT_LT(radial_ode_residual(st, {r_node}), 1e-8);
}

TEST(RadialResidual, RandomStates) {
  oracle::Sweep sweep(13);
  for (int t = 0; t < 30; ++t) {
    const auto sol = energy_roots_general(sweep.config(), sweep.channel(sweep.integer(1, 3)));
    for (std::size_t i = 0; i < sol.size(); ++i) {
      const auto st = normalize(assemble(sol, i));
      const double r_cut = r_of_xi(st.config, xi_turning_point(st.dimensionless) + 2.0);
      std::vector<double> radii;
      for (int j = 1; j <= 20; ++j) radii.push_back(r_cut * j / 20.0);
      EXPECT_LT(radial_ode_residual(st, radii), 1e-8) << "t=" << t << " root " << i;
    }
  }
}

TEST(RadialResidual, RejectsNonPositiveRadius) {
  EXPECT_THROW((void)radial_ode_residual(bench_state(0), {0.0}), std::domain_error);
}

TEST(ExportSamples, GridConsistency) {
  const auto st = bench_state(0);
  const RadialGrid grid{4.0, 150};
  const auto rows = export_samples(st, grid);
  ASSERT_EQ(rows.size(), 150u);
  EXPECT_DOUBLE_EQ(rows[0].r, grid.spacing());
  EXPECT_DOUBLE_EQ(rows[0].xi, xi_of_r(st.config, grid.spacing()));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].r, rows[i - 1].r);
  for (const auto& row : rows) EXPECT_DOUBLE_EQ(row.u, std::sqrt(row.r) * row.radial);
  EXPECT_THROW((void)export_samples(st, RadialGrid{4.0, 0}), std::invalid_argument);
}

TEST(ExportSamples, OverlayWithOracleEigenvector) {
  PhysicalConfig cfg = bench_config();
  for (std::size_t root : {0u, 1u}) {
    const auto sol = ground_energies(cfg, {0, 0.0, 1});
    const auto st = normalize(assemble(sol, root));
    const auto grid = auto_grid(sol.config, 0.0, 3, 4000);
    const auto oracle_state = eigenstate(sol.config, 0.0, 0.0, static_cast<int>(root), grid);
    const auto rows = export_samples(st, grid);
    ASSERT_EQ(rows.size(), oracle_state.radial.size());

    double dot = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) dot += rows[i].radial * oracle_state.radial[i];
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    double l2 = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double diff = rows[i].radial - sign * oracle_state.radial[i];
      l2 += diff * diff * rows[i].r * grid.spacing();
    }
    EXPECT_LT(std::sqrt(l2), 1e-3) << "root " << root;
  }
}
