// disloc: exact spectrum of the sextic oscillator in a screw dislocation.
//
//   disloc <lambda|energies|verify|wavefunction|scan> [--config file] [flags]
//
// Flags override values from the config file.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "disloc/cli/commands.hpp"

int main(int argc, char** argv) {
  using disloc::cli::kExitUsage;

  CLI::App app{"Exact spectrum of the doubly anharmonic oscillator in a screw dislocation"};
  app.require_subcommand(1);

  std::string config_path;
  // (config key, flag value) pairs applied after the config file
  std::vector<std::pair<std::string, std::optional<std::string>>> overrides = {
      {"out", {}},        {"chi", {}},     {"k", {}},      {"l_range", {}},
      {"n", {}},          {"grid_points", {}}, {"r_max", {}}, {"m", {}},
      {"omega", {}},      {"eta", {}},     {"lambda", {}}, {"branch", {}},
      {"chi_min", {}},    {"chi_max", {}}, {"chi_steps", {}},
  };
  auto flag_name = [](std::string key) {
    for (char& c : key)
      if (c == '_') c = '-';
    return "--" + key;
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"lambda", "constrained quartic coupling per (n, l, k)"},
      {"energies", "exact energies and node counts per (n, l, k)"},
      {"verify", "cross-validate exact states against series, ODE and finite-difference oracle"},
      {"wavefunction", "normalised radial samples of one exact state"},
      {"scan", "degeneracy table over a grid of chi"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value configuration file");
    for (auto& [key, value] : overrides) sub->add_option(flag_name(key), value, "overrides '" + key + "'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  disloc::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) disloc::cli::load_config_file(cfg, config_path);
    for (const auto& [key, value] : overrides)
      if (value) disloc::cli::apply_setting(cfg, key, *value);
  } catch (const disloc::cli::config_error& e) {
    std::cerr << "error: invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return disloc::cli::run_command(name, cfg, std::cerr);
}
