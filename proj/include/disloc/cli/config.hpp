// Run configuration: flat `key = value` files, overridden by flags.
//
//   # comment
//   m = 1
//   omega = 0
//   eta = 0.5
//   chi = 0.5
//   lambda = 2.83        # optional; replaces the constrained coupling (verify only)
//   l_range = -2:2       # or l_min / l_max
//   k = 0, 1.5, 2        # comma-separated list
//   n = 1
//   grid_points = 4000
//   r_max = 5            # optional; default from the turning-point rule
//   out = results
//   branch = minus       # wavefunction
//   chi_min = 0          # scan
//   chi_max = 1
//   chi_steps = 5
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "../params.hpp"

namespace disloc::cli {

/// Invalid or inconsistent configuration; `field` names the offending key.
struct config_error : std::invalid_argument {
  config_error(std::string field_name, const std::string& what)
      : std::invalid_argument(field_name + ": " + what), field(std::move(field_name)) {}
  std::string field;
};

struct RunConfig {
  PhysicalConfig physical;
  std::optional<double> lambda_override;
  int l_min = 0;
  int l_max = 0;
  std::vector<double> k_values{0.0};
  int n = 1;
  int grid_points = 4000;
  std::optional<double> r_max;
  std::string out_dir = ".";
  std::string branch = "minus";
  double chi_min = 0.0;
  double chi_max = 0.0;
  int chi_steps = 1;
  bool chi_grid_set = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& field, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
    throw config_error(field, "expected a finite number, got '" + std::string(text) + "'");
  return v;
}

inline int parse_int(const std::string& field, std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw config_error(field, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

inline std::vector<double> parse_list(const std::string& field, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) throw config_error(field, "empty list");
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_double(field, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// "a:b" (inclusive) or a single integer.
inline std::pair<int, int> parse_range(const std::string& field, std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    const int v = parse_int(field, text);
    return {v, v};
  }
  return {parse_int(field, text.substr(0, colon)), parse_int(field, text.substr(colon + 1))};
}

}  // namespace detail

/// Apply one key/value pair (file line or flag) to the configuration.
inline void apply_setting(RunConfig& cfg, const std::string& key, std::string_view value) {
  using namespace detail;
  if (key == "m") {
    cfg.physical.m = parse_double(key, value);
  } else if (key == "omega") {
    cfg.physical.omega = parse_double(key, value);
  } else if (key == "eta") {
    cfg.physical.eta = parse_double(key, value);
  } else if (key == "chi") {
    cfg.physical.chi = parse_double(key, value);
  } else if (key == "lambda") {
    cfg.lambda_override = parse_double(key, value);
  } else if (key == "l_range") {
    std::tie(cfg.l_min, cfg.l_max) = parse_range(key, value);
  } else if (key == "l_min") {
    cfg.l_min = parse_int(key, value);
  } else if (key == "l_max") {
    cfg.l_max = parse_int(key, value);
  } else if (key == "k") {
    cfg.k_values = parse_list(key, value);
  } else if (key == "n") {
    cfg.n = parse_int(key, value);
  } else if (key == "grid_points") {
    cfg.grid_points = parse_int(key, value);
  } else if (key == "r_max") {
    cfg.r_max = parse_double(key, value);
  } else if (key == "out") {
    cfg.out_dir = std::string(trim(value));
  } else if (key == "branch") {
    cfg.branch = std::string(trim(value));
  } else if (key == "chi_min") {
    cfg.chi_min = parse_double(key, value);
    cfg.chi_grid_set = true;
  } else if (key == "chi_max") {
    cfg.chi_max = parse_double(key, value);
    cfg.chi_grid_set = true;
  } else if (key == "chi_steps") {
    cfg.chi_steps = parse_int(key, value);
    cfg.chi_grid_set = true;
  } else {
    throw config_error(key, "unknown configuration key");
  }
}

inline void load_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw config_error("line " + std::to_string(line_no), "expected 'key = value'");
    apply_setting(cfg, std::string(detail::trim(line.substr(0, eq))), line.substr(eq + 1));
  }
}

inline void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config", "cannot read '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  load_config_text(cfg, text);
}

/// Field-level checks shared by all commands.
inline void validate(const RunConfig& cfg) {
  const auto& p = cfg.physical;
  if (!(p.m > 0.0)) throw config_error("m", "must be > 0");
  if (!(p.eta > 0.0)) throw config_error("eta", "must be > 0");
  if (!(p.omega >= 0.0)) throw config_error("omega", "must be >= 0");
  if (cfg.l_min > cfg.l_max)
    throw config_error("l_range", "empty range " + std::to_string(cfg.l_min) + ":" +
                                      std::to_string(cfg.l_max));
  if (cfg.k_values.empty()) throw config_error("k", "at least one value required");
  if (cfg.n < 1) throw config_error("n", "must be >= 1");
  if (cfg.grid_points < 1) throw config_error("grid_points", "must be >= 1");
  if (cfg.r_max && !(*cfg.r_max > 0.0)) throw config_error("r_max", "must be > 0");
  if (cfg.chi_steps < 1) throw config_error("chi_steps", "must be >= 1");
  if (cfg.out_dir.empty()) throw config_error("out", "empty output directory");
}

inline std::filesystem::path prepare_output_dir(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir))
    throw config_error("out", "cannot create directory '" + dir.string() + "'");
  return dir;
}

/// Channel values in output order.
inline std::vector<double> sorted_k(const RunConfig& cfg) {
  std::vector<double> ks = cfg.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

}  // namespace disloc::cli
