// Subcommands: lambda, energies, verify, wavefunction, scan.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "../heun_series.hpp"
#include "../params.hpp"
#include "../quantization.hpp"
#include "../radial_oracle.hpp"
#include "../wavefunction.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace disloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

namespace detail {

inline std::ofstream open_output(const RunConfig& cfg, std::string_view name) {
  const auto path = prepare_output_dir(cfg) / std::string(name);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("out", "cannot write '" + path.string() + "'");
  return out;
}

inline Channel channel(const RunConfig& cfg, int l, double k) { return Channel{l, k, cfg.n}; }

}  // namespace detail

/// lambda.csv: n,l,k,chi,gamma,lambda_nl
inline int cmd_lambda(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  auto out = detail::open_output(cfg, "lambda.csv");
  CsvWriter csv(out);
  csv.header({"n", "l", "k", "chi", "gamma", "lambda_nl"});
  const auto ks = sorted_k(cfg);
  for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
    for (double k : ks) {
      const Channel ch = detail::channel(cfg, l, k);
      csv.row(cfg.n, l, k, cfg.physical.chi, effective_gamma(l, cfg.physical.chi, k),
              lambda_constraint(cfg.physical, ch));
    }
  }
  log << "wrote " << (std::filesystem::path(cfg.out_dir) / "lambda.csv").string() << '\n';
  return kExitOk;
}

/// energies.csv: n,l,k,chi,gamma,lambda_nl,branch,energy,node_count
inline int cmd_energies(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  auto out = detail::open_output(cfg, "energies.csv");
  CsvWriter csv(out);
  csv.header({"n", "l", "k", "chi", "gamma", "lambda_nl", "branch", "energy", "node_count"});
  const auto ks = sorted_k(cfg);
  for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
    for (double k : ks) {
      const Channel ch = detail::channel(cfg, l, k);
      const ExactSolution sol = energy_roots_general(cfg.physical, ch);
      if (!sol.all_roots_real()) {
        log << "warning: n=" << cfg.n << " l=" << l << " k=" << format_number(k) << ": found "
            << sol.size() << " real roots, expected " << sol.expected_root_count << '\n';
      }
      for (std::size_t i = 0; i < sol.size(); ++i) {
        const BoundState st = assemble(sol, i);
        csv.row(cfg.n, l, k, cfg.physical.chi, effective_gamma(l, cfg.physical.chi, k),
                sol.lambda_nl, sol.branch_labels[i], sol.energy_roots[i], st.node_count);
      }
    }
  }
  log << "wrote " << (std::filesystem::path(cfg.out_dir) / "energies.csv").string() << '\n';
  return kExitOk;
}

struct CheckResult {
  std::string check;
  int l = 0;
  double k = 0.0;
  std::string branch;
  double tolerance = 0.0;
  double measured = 0.0;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline double rel_dev(double x, double ref) {
  return std::abs(x - ref) / std::max(std::abs(ref), 1e-300);
}

/// Oracle comparison for every root of one channel.
inline void oracle_checks(const RunConfig& cfg, const ExactSolution& sol,
                          const std::vector<int>& node_counts, std::vector<CheckResult>& out) {
  const int l = sol.channel.l;
  const double k = sol.channel.k;
  const double g = std::abs(effective_gamma(l, cfg.physical.chi, k));
  auto fail_all = [&](const std::string& why) {
    for (std::size_t i = 0; i < sol.size(); ++i)
      out.push_back({"oracle_agreement", l, k, sol.branch_labels[i], 1e-4, kNaN, false, why});
  };
  if (sol.size() == 0) return;

  int levels = static_cast<int>(sol.size()) + 1;
  for (int nc : node_counts) levels = std::max(levels, nc + 2);

  try {
    const RadialGrid grid = cfg.r_max ? RadialGrid{*cfg.r_max, cfg.grid_points}
                                      : auto_grid(sol.config, g, levels, cfg.grid_points);
    const OracleSpectrum fine = spectrum(sol.config, g, k, levels, grid);
    const RadialGrid coarse{grid.r_max, (grid.num_points + 1) / 2 - 1};
    const auto coarse_b = disloc::detail::raw_levels(sol.config, g, coarse, levels);
    const double hf = grid.spacing(), hc = coarse.spacing();

    for (std::size_t i = 0; i < sol.size(); ++i) {
      const double exact = sol.energy_roots[i];
      std::size_t best = 0;
      for (std::size_t j = 1; j < fine.eigenvalues.size(); ++j)
        if (std::abs(fine.eigenvalues[j] - exact) < std::abs(fine.eigenvalues[best] - exact)) best = j;
      const double e_fine = fine.eigenvalues[best];
      const double e_coarse = (coarse_b[best] + k * k) / (2.0 * cfg.physical.m);
      const double tol = agreement_tolerance(e_coarse, e_fine, hc, hf);
      const double dev = std::abs(e_fine - exact);
      std::string detail = "level " + std::to_string(best) + "; N=" + std::to_string(grid.num_points) +
                           "; r_max=" + format_number(grid.r_max) + "; oracle=" + format_number(e_fine);
      if (dev > tol) detail += "; refine the grid (--grid-points) or check r_max";
      out.push_back({"oracle_agreement", l, k, sol.branch_labels[i], tol, dev, dev <= tol, detail});
    }
  } catch (const std::invalid_argument& e) {
    fail_all(std::string("grid too coarse: ") + e.what() + "; increase --grid-points");
  } catch (const grid_error& e) {
    fail_all(std::string("domain too small: ") + e.what());
  } catch (const convergence_error& e) {
    fail_all(e.what());
  }
}

}  // namespace detail

/// All cross-validation checks for one channel.
[[nodiscard]] inline std::vector<CheckResult> verify_channel(const RunConfig& cfg, int l, double k) {
  std::vector<CheckResult> out;
  const Channel ch = detail::channel(cfg, l, k);
  const double lambda_nl = lambda_constraint(cfg.physical, ch);
  const double lambda = cfg.lambda_override.value_or(lambda_nl);
  const ExactSolution sol = energy_roots_for_lambda(cfg.physical, ch, lambda);

  const DimensionlessSet d0 = to_dimensionless(sol.config, ch, 0.0);
  const double lam_tol = 1e-12 * std::max(1.0, d0.a * d0.a / 4.0);
  const double lam_dev = std::abs(d0.termination_parameter() - 2.0 * ch.n);
  out.push_back({"lambda_condition", l, k, "", lam_tol, lam_dev, lam_dev <= lam_tol,
                 "lambda=" + format_number(lambda) + "; constrained=" + format_number(lambda_nl)});
  out.push_back({"real_root_count", l, k, "", static_cast<double>(sol.expected_root_count),
                 static_cast<double>(sol.size()), sol.all_roots_real(),
                 "expected n+1 real roots of f_{n+1}(b)"});

  std::vector<int> node_counts;
  for (std::size_t i = 0; i < sol.size(); ++i) {
    const std::string& br = sol.branch_labels[i];
    const TerminationCheck tc = check_termination(sol.config, ch, sol.energy_roots[i]);
    out.push_back({"termination", l, k, br, 1e-10, tc.coefficient_defect,
                   tc.coefficient_defect <= 1e-10, "max |f_j|/max|f_0..f_n| for n<j<=n+10"});
    try {
      const BoundState st = assemble(sol, i);
      node_counts.push_back(st.node_count);
      double heun_res = 0.0;
      for (double xi : {0.1, 0.5, 1.0, 2.0, 5.0}) heun_res = std::max(heun_res, ode_residual(st.heun, xi));
      out.push_back({"heun_ode_residual", l, k, br, 1e-9, heun_res, heun_res <= 1e-9,
                     "xi in {0.1 0.5 1 2 5}"});
      const double r_end = 1.2 * r_of_xi(sol.config, std::max(xi_turning_point(st.dimensionless), 1.0));
      std::vector<double> radii;
      for (int j = 0; j < 20; ++j) radii.push_back(r_end * (j + 0.5) / 20.0);
      const double rad_res = radial_ode_residual(st, radii);
      out.push_back({"radial_ode_residual", l, k, br, 1e-8, rad_res, rad_res <= 1e-8,
                     "20 radii in (0 " + format_number(r_end) + "]; nodes=" +
                         std::to_string(st.node_count)});
    } catch (const convergence_error& e) {
      node_counts.push_back(static_cast<int>(i));
      out.push_back({"heun_ode_residual", l, k, br, 1e-9, kNaN, false, e.what()});
      out.push_back({"radial_ode_residual", l, k, br, 1e-8, kNaN, false, e.what()});
    }
  }

  if (ch.n == 1 && !cfg.lambda_override) {
    const ExactSolution quad = ground_energies(cfg.physical, ch);
    double dev = 0.0;
    bool ok = quad.size() == sol.size();
    for (std::size_t i = 0; ok && i < sol.size(); ++i)
      dev = std::max(dev, detail::rel_dev(sol.energy_roots[i], quad.energy_roots[i]));
    out.push_back({"quadratic_vs_general", l, k, "", 1e-10, dev, ok && dev <= 1e-10,
                   "n=1 quadratic roots vs roots of f_2(b)"});

    const GroundClosedForm cf = closed_form_ground(cfg.physical, ch);
    const double cf_dev = std::max(detail::rel_dev(cf.minus(), quad.energy_roots[0]),
                                   detail::rel_dev(cf.plus(), quad.energy_roots[1]));
    out.push_back({"closed_form_corrected", l, k, "", 1e-12, cf_dev, cf_dev <= 1e-12,
                   "centre (2+|g|)lambda/sqrt(2m eta) +/- half-gap + k^2/2m"});

    const GroundClosedForm raw = closed_form_ground_uncorrected(cfg.physical, ch);
    const double ratio = raw.centre / cf.centre;
    const double ratio_dev = detail::rel_dev(ratio, cfg.physical.m);
    out.push_back({"closed_form_mass_factor", l, k, "", 1e-12, ratio,
                   ratio_dev <= 1e-12,
                   "uncorrected first term / corrected first term; expected m=" +
                       format_number(cfg.physical.m) +
                       (cfg.physical.m == 1.0 ? " (indistinguishable at m=1)"
                                              : " (uncorrected form misses 1/m)")});
  }

  detail::oracle_checks(cfg, sol, node_counts, out);
  return out;
}

/// verify.csv: check,n,l,k,branch,tolerance,measured,status,detail
inline int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  std::vector<CheckResult> all;
  const auto ks = sorted_k(cfg);
  for (int l = cfg.l_min; l <= cfg.l_max; ++l)
    for (double k : ks)
      for (auto& r : verify_channel(cfg, l, k)) all.push_back(std::move(r));

  auto out = detail::open_output(cfg, "verify.csv");
  CsvWriter csv(out);
  csv.comment("closed_form_mass_factor: the widely quoted n=1 energy formula has first term");
  csv.comment("(2+|g|)/sqrt(2m eta) * sqrt(4 m^2 omega eta + (2m eta)^{3/2}(8+2|g|)) = m * P/(4m);");
  csv.comment("the quadratic B^2 - P B + Q = 0 (B = 2mE - k^2) gives P/(4m). measured = ratio.");
  csv.header({"check", "n", "l", "k", "branch", "tolerance", "measured", "status", "detail"});
  int failures = 0;
  for (const auto& r : all) {
    csv.row(r.check, cfg.n, r.l, r.k, r.branch, r.tolerance, r.measured,
            std::string(r.pass ? "PASS" : "FAIL"), r.detail);
    if (!r.pass) {
      ++failures;
      log << "FAIL " << r.check << " l=" << r.l << " k=" << format_number(r.k) << ' ' << r.branch
          << " measured=" << format_number(r.measured) << " tol=" << format_number(r.tolerance)
          << " (" << r.detail << ")\n";
    }
  }
  log << all.size() - static_cast<std::size_t>(failures) << "/" << all.size() << " checks passed; report "
      << (std::filesystem::path(cfg.out_dir) / "verify.csv").string() << '\n';
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

/// wavefunction.csv: "# energy=.. norm=.." then r,xi,R,u
inline int cmd_wavefunction(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.l_min != cfg.l_max) throw config_error("l_range", "wavefunction needs a single l");
  if (cfg.k_values.size() != 1) throw config_error("k", "wavefunction needs a single k");
  const Channel ch = detail::channel(cfg, cfg.l_min, cfg.k_values.front());
  const ExactSolution sol = energy_roots_general(cfg.physical, ch);
  const auto it = std::find(sol.branch_labels.begin(), sol.branch_labels.end(), cfg.branch);
  if (it == sol.branch_labels.end()) {
    std::string known;
    for (const auto& b : sol.branch_labels) known += (known.empty() ? "" : " ") + b;
    throw config_error("branch", "unknown branch '" + cfg.branch + "' (available: " + known + ")");
  }
  const BoundState st =
      normalize(assemble(sol, static_cast<std::size_t>(it - sol.branch_labels.begin())));
  const double r_max = cfg.r_max.value_or(r_of_xi(cfg.physical, xi_cutoff(st.dimensionless)));
  const auto rows = export_samples(st, RadialGrid{r_max, cfg.grid_points});

  auto out = detail::open_output(cfg, "wavefunction.csv");
  CsvWriter csv(out);
  csv.comment("energy=" + format_number(st.energy) + " norm=" + format_number(st.norm_constant));
  csv.header({"r", "xi", "R", "u"});
  for (const auto& s : rows) csv.row(s.r, s.xi, s.radial, s.u);
  log << "wrote " << (std::filesystem::path(cfg.out_dir) / "wavefunction.csv").string() << " ("
      << st.branch << ", nodes=" << st.node_count << ")\n";
  return kExitOk;
}

/// scan.csv: chi,n,l,k,gamma,lambda_nl,branch,energy over a chi grid.
inline int cmd_scan(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  std::vector<double> chis;
  if (cfg.chi_grid_set) {
    for (int i = 0; i < cfg.chi_steps; ++i) {
      const double t = cfg.chi_steps == 1 ? 0.0 : static_cast<double>(i) / (cfg.chi_steps - 1);
      chis.push_back(cfg.chi_min + t * (cfg.chi_max - cfg.chi_min));
    }
  } else {
    chis.push_back(cfg.physical.chi);
  }
  auto out = detail::open_output(cfg, "scan.csv");
  CsvWriter csv(out);
  csv.header({"chi", "n", "l", "k", "gamma", "lambda_nl", "branch", "energy"});
  for (double chi : chis) {
    PhysicalConfig p = cfg.physical;
    p.chi = chi;
    for (double k : sorted_k(cfg)) {
      for (const auto& row : degeneracy_report(p, k, cfg.l_min, cfg.l_max, cfg.n)) {
        for (std::size_t i = 0; i < row.energies.size(); ++i)
          csv.row(chi, cfg.n, row.l, k, row.gamma, row.lambda_nl, row.branch_labels[i], row.energies[i]);
      }
    }
  }
  log << "wrote " << (std::filesystem::path(cfg.out_dir) / "scan.csv").string() << '\n';
  return kExitOk;
}

/// Dispatch by name; maps configuration errors to exit code 2.
inline int run_command(std::string_view name, const RunConfig& cfg, std::ostream& log) {
  try {
    if (name == "lambda") return cmd_lambda(cfg, log);
    if (name == "energies") return cmd_energies(cfg, log);
    if (name == "verify") return cmd_verify(cfg, log);
    if (name == "wavefunction") return cmd_wavefunction(cfg, log);
    if (name == "scan") return cmd_scan(cfg, log);
    log << "error: unknown command '" << name << "'\n";
    return kExitUsage;
  } catch (const config_error& e) {
    log << "error: invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace disloc::cli
