#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgroove/csv.hpp"

namespace qgroove {

/// One run, one structured text file of `key value` lines. Values quoted from
/// the source material keep plain lines; artifact-chosen defaults carry an
/// inline `# artifact default` marker when emitted.
struct RunConfig {
  std::string experiment = "fig6";

  // channel
  double omega = 30.0;
  double d0 = 1.8903;
  double eta = 30.0;

  // numerics
  double hbar = 6.0;
  double dt = 1e-3;
  double t_start = -10.0;
  double t_end = 10.0;
  std::string splitting = "strang";
  double pz = 30.0;
  int grid_points = 256;
  double x_min = -8.0;
  double x_max = 8.0;
  int z_points = 512;
  double z_min = -190.0;
  double z_max = 190.0;
  double sigma_z = 1.0;
  int snapshot_stride = 100;

  // two-particle statistics and interaction
  std::string statistics = "boson";
  std::string interaction = "none";  // none | coulomb | lennard_jones
  double v0 = 0.0;
  double epsilon = 1.0;
  double b = 0.25;
  double interaction_sigma_z = 1.0;
  int sweep_points = 15;
  bool reduced = false;

  // execution
  std::string output_dir = "out";
  int workers = 0;  // 0 = hardware concurrency
  bool rng_free = true;
};

namespace detail {

struct ConfigField {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
  bool artifact_default;  // true when the default is not a quoted source value
};

inline const std::vector<ConfigField>& config_fields() {
  auto num = [](double RunConfig::*m, bool artifact, const char* key) {
    return ConfigField{key, [m](const RunConfig& c) { return format_number(c.*m); },
                       [m, key](RunConfig& c, const std::string& v) {
                         std::size_t used = 0;
                         c.*m = std::stod(v, &used);
                         if (used != v.size()) {
                           throw std::invalid_argument(std::string(key) + ": bad number '" + v + "'");
                         }
                       },
                       artifact};
  };
  auto integer = [](int RunConfig::*m, bool artifact, const char* key) {
    return ConfigField{key, [m](const RunConfig& c) { return std::to_string(c.*m); },
                       [m, key](RunConfig& c, const std::string& v) {
                         std::size_t used = 0;
                         c.*m = std::stoi(v, &used);
                         if (used != v.size()) {
                           throw std::invalid_argument(std::string(key) + ": bad integer '" + v + "'");
                         }
                       },
                       artifact};
  };
  auto str = [](std::string RunConfig::*m, bool artifact, const char* key) {
    return ConfigField{key, [m](const RunConfig& c) { return c.*m; },
                       [m](RunConfig& c, const std::string& v) { c.*m = v; }, artifact};
  };
  auto boolean = [](bool RunConfig::*m, bool artifact, const char* key) {
    return ConfigField{key, [m](const RunConfig& c) { return c.*m ? "true" : "false"; },
                       [m, key](RunConfig& c, const std::string& v) {
                         if (v == "true") {
                           c.*m = true;
                         } else if (v == "false") {
                           c.*m = false;
                         } else {
                           throw std::invalid_argument(std::string(key) + ": expected true/false");
                         }
                       },
                       artifact};
  };
  static const std::vector<ConfigField> fields = {
      str(&RunConfig::experiment, false, "experiment"),
      num(&RunConfig::omega, false, "omega"),
      num(&RunConfig::d0, false, "d0"),
      num(&RunConfig::eta, false, "eta"),
      num(&RunConfig::hbar, false, "hbar"),
      num(&RunConfig::dt, false, "dt"),
      num(&RunConfig::t_start, false, "t_start"),
      num(&RunConfig::t_end, false, "t_end"),
      str(&RunConfig::splitting, true, "splitting"),
      num(&RunConfig::pz, false, "pz"),
      integer(&RunConfig::grid_points, true, "grid_points"),
      num(&RunConfig::x_min, true, "x_min"),
      num(&RunConfig::x_max, true, "x_max"),
      integer(&RunConfig::z_points, true, "z_points"),
      num(&RunConfig::z_min, true, "z_min"),
      num(&RunConfig::z_max, true, "z_max"),
      num(&RunConfig::sigma_z, true, "sigma_z"),
      integer(&RunConfig::snapshot_stride, true, "snapshot_stride"),
      str(&RunConfig::statistics, false, "statistics"),
      str(&RunConfig::interaction, false, "interaction"),
      num(&RunConfig::v0, false, "v0"),
      num(&RunConfig::epsilon, false, "epsilon"),
      num(&RunConfig::b, false, "b"),
      num(&RunConfig::interaction_sigma_z, true, "interaction_sigma_z"),
      integer(&RunConfig::sweep_points, true, "sweep_points"),
      boolean(&RunConfig::reduced, true, "reduced"),
      str(&RunConfig::output_dir, true, "output_dir"),
      integer(&RunConfig::workers, true, "workers"),
      boolean(&RunConfig::rng_free, true, "rng_free"),
  };
  return fields;
}

}  // namespace detail

/// Canonical serialization: fixed key order, `# artifact default` markers on
/// fields whose defaults are artifact choices. parse(emit(c)) == c and
/// emit(parse(s)) == s for canonical s.
inline std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& f : detail::config_fields()) {
    out << f.key << ' ' << f.get(cfg);
    if (f.artifact_default) out << "  # artifact default";
    out << '\n';
  }
  return out.str();
}

inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, const detail::ConfigField*> by_key;
  for (const auto& f : detail::config_fields()) by_key[f.key] = &f;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, value, extra;
    if (!(ls >> key)) continue;  // blank line
    if (!(ls >> value)) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": missing value for '" +
                                  key + "'");
    }
    if (ls >> extra) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": trailing tokens");
    }
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
    it->second->set(cfg, value);
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Apply `key=value` overrides (CLI flags) on top of a config.
inline void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("override must be key=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  for (const auto& f : detail::config_fields()) {
    if (f.key == key) {
      f.set(cfg, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key: " + key);
}

/// Collects every violated field; an empty result means the config is valid.
inline std::vector<std::string> validate_config(const RunConfig& cfg) {
  std::vector<std::string> bad;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) bad.push_back(msg);
  };
  require(cfg.omega > 0, "omega must be positive");
  require(cfg.d0 > 0, "d0 must be positive");
  require(cfg.eta > 0, "eta must be positive");
  require(cfg.hbar > 0, "hbar must be positive");
  require(cfg.dt > 0, "dt must be positive");
  require(cfg.t_end > cfg.t_start, "t_end must exceed t_start");
  require(cfg.splitting == "lie" || cfg.splitting == "strang", "splitting must be lie or strang");
  require(cfg.pz > 0, "pz must be positive");
  require(cfg.grid_points >= 64 && (cfg.grid_points & (cfg.grid_points - 1)) == 0,
          "grid_points must be a power of two >= 64");
  require(cfg.x_max > cfg.x_min, "x_max must exceed x_min");
  require(cfg.z_points >= 64 && (cfg.z_points & (cfg.z_points - 1)) == 0,
          "z_points must be a power of two >= 64");
  require(cfg.z_max > cfg.z_min, "z_max must exceed z_min");
  require(cfg.sigma_z > 0, "sigma_z must be positive");
  require(cfg.snapshot_stride >= 1, "snapshot_stride must be >= 1");
  require(cfg.statistics == "boson" || cfg.statistics == "fermion",
          "statistics must be boson or fermion");
  require(cfg.interaction == "none" || cfg.interaction == "coulomb" ||
              cfg.interaction == "lennard_jones",
          "interaction must be none, coulomb or lennard_jones");
  if (cfg.interaction != "none") {
    require(cfg.epsilon > 0, "epsilon must be positive");
    if (cfg.interaction == "lennard_jones") require(cfg.b > 0, "b must be positive");
  }
  require(cfg.interaction_sigma_z >= 0, "interaction_sigma_z must be >= 0");
  require(cfg.sweep_points >= 2, "sweep_points must be >= 2");
  require(cfg.workers >= 0, "workers must be >= 0");
  require(cfg.rng_free, "rng_free must stay true: every experiment is deterministic");
  return bad;
}

}  // namespace qgroove
