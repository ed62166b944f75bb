// Copyright 2026 The pevclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pevclock/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>

#include "pevclock/csv.hpp"

namespace pevclock {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

struct RawItem {
  std::string value;
  int line = 0;
  bool consumed = false;
};

struct RawConfig {
  std::string path;
  std::map<std::string, RawItem> items;

  std::string where(const std::string& key) const {
    const auto it = items.find(key);
    if (it == items.end()) return path;
    return path + ":" + std::to_string(it->second.line);
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

RawConfig parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  RawConfig raw;
  raw.path = path;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": empty section name");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": missing key before '='");
    }
    if (section.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": key '" +
                        key + "' outside any [section]");
    }
    const std::string full = section + "." + key;
    if (raw.items.count(full)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": duplicate key '" + full + "'");
    }
    raw.items[full] = RawItem{value, lineno, false};
  }
  return raw;
}

const RawItem* fetch(RawConfig& raw, const std::string& key) {
  const auto it = raw.items.find(key);
  if (it == raw.items.end()) return nullptr;
  it->second.consumed = true;
  return &it->second;
}

double parse_double(const RawConfig& raw, const std::string& key,
                    const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end == text.c_str() || *end != '\0') {
    throw ConfigError(raw.where(key) + ": key '" + key +
                      "': cannot parse '" + text + "' as a number");
  }
  return v;
}

double get_double(RawConfig& raw, const std::string& key, double fallback,
                  double lo, double hi) {
  const RawItem* item = fetch(raw, key);
  const double v = item ? parse_double(raw, key, item->value) : fallback;
  if (!(v >= lo && v <= hi)) {
    throw ConfigError(raw.where(key) + ": key '" + key + "': value " +
                      format_double(v) + " outside [" + format_double(lo) +
                      ", " + format_double(hi) + "]");
  }
  return v;
}

long get_long(RawConfig& raw, const std::string& key, long fallback, long lo,
              long hi) {
  const RawItem* item = fetch(raw, key);
  long v = fallback;
  if (item) {
    errno = 0;
    char* end = nullptr;
    v = std::strtol(item->value.c_str(), &end, 10);
    if (errno != 0 || end == item->value.c_str() || *end != '\0') {
      throw ConfigError(raw.where(key) + ": key '" + key +
                        "': cannot parse '" + item->value +
                        "' as an integer");
    }
  }
  if (v < lo || v > hi) {
    throw ConfigError(raw.where(key) + ": key '" + key + "': value " +
                      std::to_string(v) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  return v;
}

std::uint64_t get_seed(RawConfig& raw, const std::string& key,
                       std::uint64_t fallback) {
  const RawItem* item = fetch(raw, key);
  if (!item) return fallback;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(item->value.c_str(), &end, 10);
  if (errno != 0 || end == item->value.c_str() || *end != '\0') {
    throw ConfigError(raw.where(key) + ": key '" + key + "': cannot parse '" +
                      item->value + "' as a seed");
  }
  return v;
}

bool get_bool(RawConfig& raw, const std::string& key, bool fallback) {
  const RawItem* item = fetch(raw, key);
  if (!item) return fallback;
  if (item->value == "true") return true;
  if (item->value == "false") return false;
  throw ConfigError(raw.where(key) + ": key '" + key + "': expected 'true' " +
                    "or 'false', got '" + item->value + "'");
}

std::string get_choice(RawConfig& raw, const std::string& key,
                       const std::string& fallback,
                       const std::vector<std::string>& choices) {
  const RawItem* item = fetch(raw, key);
  const std::string v = item ? item->value : fallback;
  for (const auto& c : choices) {
    if (v == c) return v;
  }
  std::string allowed;
  for (const auto& c : choices) {
    if (!allowed.empty()) allowed += "|";
    allowed += c;
  }
  throw ConfigError(raw.where(key) + ": key '" + key + "': expected one of " +
                    allowed + ", got '" + v + "'");
}

std::vector<double> get_list(RawConfig& raw, const std::string& key,
                             std::vector<double> fallback) {
  const RawItem* item = fetch(raw, key);
  if (!item) return fallback;
  std::vector<double> out;
  std::string text = item->value;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string cell =
        trim(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                         : comma - pos));
    if (cell.empty()) {
      throw ConfigError(raw.where(key) + ": key '" + key +
                        "': empty list element");
    }
    out.push_back(parse_double(raw, key, cell));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void reject_unknown(const RawConfig& raw) {
  for (const auto& [key, item] : raw.items) {
    if (!item.consumed) {
      throw ConfigError(raw.path + ":" + std::to_string(item.line) +
                        ": unknown key '" + key + "'");
    }
  }
}

std::string potential_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::kHarmonic: return "harmonic";
    case PotentialKind::kSquareWell: return "square_well";
    case PotentialKind::kFreeBox: return "free_box";
  }
  return "?";
}

std::string xi_kind_name(XiKind kind) {
  switch (kind) {
    case XiKind::kExponential: return "exponential";
    case XiKind::kHalfNormal: return "half_normal";
    case XiKind::kDelta: return "delta";
  }
  return "?";
}

}  // namespace

RunConfig default_run_config() { return RunConfig{}; }

RunConfig load_run_config(const std::string& path) {
  RawConfig raw = parse_file(path);
  RunConfig cfg;

  cfg.temporal.inertia =
      get_double(raw, "temporal.inertia", cfg.temporal.inertia, 1e-9, 1e9);
  cfg.temporal.omega =
      get_double(raw, "temporal.omega", cfg.temporal.omega, 1e-9, 1e9);
  const std::string pot =
      get_choice(raw, "temporal.potential", "harmonic",
                 {"harmonic", "square_well", "free_box"});
  cfg.temporal.potential = pot == "harmonic" ? PotentialKind::kHarmonic
                           : pot == "square_well" ? PotentialKind::kSquareWell
                                                  : PotentialKind::kFreeBox;
  cfg.temporal.well_half_width = get_double(
      raw, "temporal.well_half_width", cfg.temporal.well_half_width, 1e-9,
      1e9);
  cfg.temporal.well_height = get_double(raw, "temporal.well_height",
                                        cfg.temporal.well_height, 0.0, 1e12);
  cfg.temporal.grid_half_width = get_double(
      raw, "temporal.grid_half_width", cfg.temporal.grid_half_width, 0.0, 1e9);
  cfg.temporal.grid_points = get_long(raw, "temporal.grid_points",
                                      cfg.temporal.grid_points, 64, 1000000);
  cfg.temporal.n_states =
      int(get_long(raw, "temporal.n_states", cfg.temporal.n_states, 1, 1024));
  cfg.temporal.clock_resolution =
      get_double(raw, "temporal.clock_resolution",
                 cfg.temporal.clock_resolution, 1e-12, 1e9);

  cfg.clock.gamma =
      get_double(raw, "clock.gamma", cfg.clock.gamma, 0.0, kHalfPi);
  cfg.clock.energies = get_list(raw, "clock.energies", cfg.clock.energies);
  if (cfg.clock.energies.empty() ||
      !std::is_sorted(cfg.clock.energies.begin(), cfg.clock.energies.end())) {
    throw ConfigError(raw.where("clock.energies") +
                      ": key 'clock.energies': need a non-empty ascending "
                      "list");
  }
  cfg.clock.temporal_levels = int(get_long(
      raw, "clock.temporal_levels", cfg.clock.temporal_levels, 1, 64));
  cfg.clock.overlap = get_choice(raw, "clock.overlap", "unit",
                                 {"unit", "exact"}) == "unit"
                          ? OverlapMode::kUnitApproximation
                          : OverlapMode::kExactGrid;
  cfg.clock.group_tol =
      get_double(raw, "clock.group_tol", cfg.clock.group_tol, 1e-15, 1e-3);

  const std::string kind = get_choice(
      raw, "xi.kind", "exponential", {"exponential", "half_normal", "delta"});
  cfg.xi.kind = kind == "exponential" ? XiKind::kExponential
                : kind == "half_normal" ? XiKind::kHalfNormal
                                        : XiKind::kDelta;
  cfg.xi.mean = get_double(raw, "xi.mean", cfg.xi.mean, 0.0, 1e9);

  cfg.run.trajectories =
      get_long(raw, "run.trajectories", cfg.run.trajectories, 1, 2000000000L);
  cfg.run.max_steps =
      get_long(raw, "run.max_steps", cfg.run.max_steps, 1, 2000000000L);
  cfg.run.seed = get_seed(raw, "run.seed", cfg.run.seed);
  cfg.run.threads = int(get_long(raw, "run.threads", cfg.run.threads, 1, 256));
  cfg.run.stop_at_first_click = get_bool(raw, "run.stop_at_first_click",
                                         cfg.run.stop_at_first_click);
  cfg.run.dump_trajectories =
      get_bool(raw, "run.dump_trajectories", cfg.run.dump_trajectories);
  cfg.run.law = get_choice(raw, "run.law", "first_click",
                           {"first_click", "length_weighted"}) ==
                        "first_click"
                    ? ComparisonLaw::kFirstClickGeometric
                    : ComparisonLaw::kLengthWeighted;
  cfg.run.thresholds.tv_max = get_double(raw, "run.tv_threshold",
                                         cfg.run.thresholds.tv_max, 0.0, 1.0);
  cfg.run.thresholds.z_max =
      get_double(raw, "run.z_threshold", cfg.run.thresholds.z_max, 0.0, 1e6);
  cfg.run.thresholds.min_clicks = get_long(
      raw, "run.min_clicks", cfg.run.thresholds.min_clicks, 1, 2000000000L);

  reject_unknown(raw);
  return cfg;
}

std::vector<std::pair<std::string, std::string>> RunConfig::snapshot() const {
  std::vector<std::pair<std::string, std::string>> out;
  const auto add = [&](const std::string& k, const std::string& v) {
    out.emplace_back(k, v);
  };
  add("temporal.inertia", format_double(temporal.inertia));
  add("temporal.omega", format_double(temporal.omega));
  add("temporal.potential", potential_name(temporal.potential));
  add("temporal.well_half_width", format_double(temporal.well_half_width));
  add("temporal.well_height", format_double(temporal.well_height));
  add("temporal.grid_half_width", format_double(temporal.grid_half_width));
  add("temporal.grid_points", format_long(temporal.grid_points));
  add("temporal.n_states", format_long(temporal.n_states));
  add("temporal.clock_resolution", format_double(temporal.clock_resolution));
  add("clock.gamma", format_double(clock.gamma));
  {
    std::string list;
    for (double e : clock.energies) {
      if (!list.empty()) list += ",";
      list += format_double(e);
    }
    add("clock.energies", list);
  }
  add("clock.temporal_levels", format_long(clock.temporal_levels));
  add("clock.overlap",
      clock.overlap == OverlapMode::kUnitApproximation ? "unit" : "exact");
  add("clock.group_tol", format_double(clock.group_tol));
  add("xi.kind", xi_kind_name(xi.kind));
  add("xi.mean", format_double(xi.mean));
  add("run.trajectories", format_long(run.trajectories));
  add("run.max_steps", format_long(run.max_steps));
  add("run.seed", std::to_string(run.seed));
  add("run.threads", format_long(run.threads));
  add("run.stop_at_first_click", run.stop_at_first_click ? "true" : "false");
  add("run.dump_trajectories", run.dump_trajectories ? "true" : "false");
  add("run.law", run.law == ComparisonLaw::kFirstClickGeometric
                     ? "first_click"
                     : "length_weighted");
  add("run.tv_threshold", format_double(run.thresholds.tv_max));
  add("run.z_threshold", format_double(run.thresholds.z_max));
  add("run.min_clicks", format_long(run.thresholds.min_clicks));
  return out;
}

}  // namespace pevclock
