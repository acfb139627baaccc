// Copyright 2026 The kdq-collision Authors
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

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "kdq/experiment.hpp"

namespace kdq {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Entry {
  std::string value;
  std::string origin;
};

using EntryMap = std::map<std::string, Entry>;

void parse_assignment(const std::string& line, const std::string& origin, EntryMap& out) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw InvalidValue(trim(line), "expected 'key = value' (" + origin + ")");
  }
  const auto key = trim(line.substr(0, eq));
  const auto value = trim(line.substr(eq + 1));
  if (key.empty()) throw MissingKey("<empty> (" + origin + ")");
  if (value.empty()) throw InvalidValue(key, "empty value (" + origin + ")");
  out[key] = {value, origin};
}

double to_real(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw InvalidValue(key, "'" + text + "' is not a finite number");
  }
  return v;
}

std::size_t to_count(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  if (!text.empty() && text[0] == '-') throw InvalidValue(key, "must be non-negative");
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw InvalidValue(key, "'" + text + "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

ExperimentKind to_kind(const std::string& text) {
  if (text == "single_run") return ExperimentKind::kSingleRun;
  if (text == "detuning_sweep") return ExperimentKind::kDetuningSweep;
  if (text == "anisotropy_sweep") return ExperimentKind::kAnisotropySweep;
  throw InvalidValue("kind", "expected single_run, detuning_sweep or anisotropy_sweep");
}

ExperimentSpec build(const EntryMap& entries) {
  ExperimentSpec spec;
  auto& base = spec.base;
  auto real = [&](const char* key, double& slot) {
    if (auto it = entries.find(key); it != entries.end()) slot = to_real(key, it->second.value);
  };

  static const char* kKnown[] = {"omega_s", "omega_m", "omega_a", "g_sm", "g_ma", "tau1",
                                 "tau2", "beta", "gamma", "n_max", "kind", "grid_min",
                                 "grid_max", "grid_points", "output_dir", "formats",
                                 "sm_interaction", "anisotropy_strength"};
  for (const auto& [key, entry] : entries) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw InvalidValue(key, "unknown key (" + entry.origin + ")");
    }
  }

  real("omega_s", base.spins.omega_s);
  real("omega_m", base.spins.omega_m);
  real("omega_a", base.spins.omega_a);
  real("g_sm", base.couplings.g_sm);
  real("g_ma", base.couplings.g_ma);
  real("tau1", base.couplings.tau1);
  real("tau2", base.couplings.tau2);
  real("beta", base.thermal.beta);
  real("gamma", base.couplings.gamma);
  real("anisotropy_strength", base.couplings.anisotropy_strength);

  if (auto it = entries.find("sm_interaction"); it != entries.end()) {
    if (it->second.value == "isotropic") {
      base.couplings.sm_interaction = SmInteraction::kIsotropic;
    } else if (it->second.value == "anisotropic") {
      base.couplings.sm_interaction = SmInteraction::kAnisotropic;
    } else {
      throw InvalidValue("sm_interaction", "expected isotropic or anisotropic");
    }
  }

  if (auto it = entries.find("n_max"); it != entries.end()) {
    base.n_max = to_count("n_max", it->second.value);
  }
  if (base.n_max < 1) throw InvalidValue("n_max", "must be at least 1");

  try {
    validate(base.spins);
  } catch (const std::invalid_argument& e) {
    throw InvalidValue("omega", e.what());
  }
  try {
    validate(base.thermal);
  } catch (const std::invalid_argument& e) {
    throw InvalidValue("beta", e.what());
  }
  try {
    validate(base.couplings);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw InvalidValue(what.rfind("gamma", 0) == 0 ? "gamma" : "tau", what);
  }

  if (auto it = entries.find("kind"); it != entries.end()) {
    spec.kind = to_kind(it->second.value);
    spec.kind_explicit = true;
  }

  const bool has_min = entries.count("grid_min") > 0;
  const bool has_max = entries.count("grid_max") > 0;
  if (has_min != has_max) throw MissingKey(has_min ? "grid_max" : "grid_min");
  double lo = spec.kind == ExperimentKind::kAnisotropySweep ? -1.0 : -0.5;
  double hi = -lo;
  real("grid_min", lo);
  real("grid_max", hi);
  if (lo > hi) throw InvalidValue("grid_min", "must not exceed grid_max");
  if (spec.kind == ExperimentKind::kAnisotropySweep && (lo < -1.0 || hi > 1.0)) {
    throw InvalidValue("grid_min", "anisotropy grid must lie within [-1, 1]");
  }
  std::size_t points = kDefaultGridPoints;
  if (auto it = entries.find("grid_points"); it != entries.end()) {
    points = to_count("grid_points", it->second.value);
  }
  if (points < 1) throw InvalidValue("grid_points", "must be at least 1");
  if (spec.kind != ExperimentKind::kSingleRun) spec.grid = uniform_grid(lo, hi, points);

  if (auto it = entries.find("output_dir"); it != entries.end()) {
    spec.output_dir = it->second.value;
  } else if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    spec.output_dir = env;
  } else {
    spec.output_dir = "kdq_out";
  }

  if (auto it = entries.find("formats"); it != entries.end()) {
    spec.write_csv = false;
    spec.write_json = false;
    std::stringstream ss(it->second.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "csv") {
        spec.write_csv = true;
      } else if (item == "json") {
        spec.write_json = true;
      } else {
        throw InvalidValue("formats", "unknown format '" + item + "'");
      }
    }
    if (!spec.write_csv && !spec.write_json) throw InvalidValue("formats", "no format selected");
  }
  return spec;
}

}  // namespace

MissingKey::MissingKey(const std::string& key)
    : ConfigError("missing key: " + key), key_(key) {}

InvalidValue::InvalidValue(const std::string& key, const std::string& reason)
    : ConfigError("invalid value for '" + key + "': " + reason), key_(key), reason_(reason) {}

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSingleRun:
      return "single_run";
    case ExperimentKind::kDetuningSweep:
      return "detuning_sweep";
    case ExperimentKind::kAnisotropySweep:
      return "anisotropy_sweep";
  }
  return "unknown";
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

ExperimentSpec parse_config(const std::string& text, std::span<const std::string> overrides) {
  EntryMap entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    parse_assignment(line, "line " + std::to_string(lineno), entries);
  }
  for (const auto& o : overrides) parse_assignment(o, "override", entries);
  return build(entries);
}

ExperimentSpec load_config(const std::string& path, std::span<const std::string> overrides) {
  if (path.empty()) return parse_config("", overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

}  // namespace kdq
