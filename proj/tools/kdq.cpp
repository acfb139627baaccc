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

// kdq: command-line driver for single runs and parameter sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "kdq/experiment.hpp"

namespace {

enum ExitCode : int { kOk = 0, kConfigFailure = 1, kRuntimeFailure = 2, kPartialSweep = 3 };

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::vector<std::string> formats;
  std::size_t workers = 0;
  bool quiet = false;
  bool maps = false;
};

kdq::ExperimentSpec resolve(const Options& opt, std::vector<std::string> sets) {
  auto spec = kdq::load_config(opt.config, sets);
  if (!opt.out.empty()) spec.output_dir = opt.out;
  if (!opt.formats.empty()) {
    spec.write_csv = false;
    spec.write_json = false;
    for (const auto& f : opt.formats) {
      if (f == "csv") {
        spec.write_csv = true;
      } else if (f == "json") {
        spec.write_json = true;
      } else {
        throw kdq::InvalidValue("--format", "unknown format '" + f + "'");
      }
    }
  }
  return spec;
}

std::ofstream open_output(const std::filesystem::path& dir, const char* name) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

int run_single(const Options& opt) {
  kdq::ExperimentSpec spec;
  try {
    spec = resolve(opt, opt.sets);
    if (spec.kind_explicit && spec.kind != kdq::ExperimentKind::kSingleRun) {
      throw kdq::InvalidValue("kind", "'run' needs kind = single_run; use 'sweep'");
    }
  } catch (const std::exception& e) {
    std::cerr << "kdq: config error: " << e.what() << '\n';
    return kConfigFailure;
  }

  try {
    const auto analysis = kdq::analyze_run(spec.base);
    const std::filesystem::path dir = spec.output_dir;
    std::filesystem::create_directories(dir);
    if (spec.write_csv) {
      auto out = open_output(dir, "collisions.csv");
      kdq::write_collision_csv(out, analysis.rows);
    }
    if (spec.write_json) {
      auto out = open_output(dir, "summary.json");
      kdq::write_run_summary_json(out, spec, analysis);
    }
    if (opt.maps) {
      auto out = open_output(dir, "maps.jsonl");
      kdq::write_map_family_jsonl(out, analysis.maps, 0);
    }
    const auto& s = analysis.summary;
    if (!opt.quiet) {
      std::cout << "collisions " << s.rows << "  I_RHP " << kdq::format_real(s.i_rhp)
                << "  I_LFS " << kdq::format_real(s.i_lfs) << "  sum_Nq "
                << kdq::format_real(s.sum_nq) << "\n"
                << "output " << dir.string() << '\n';
    }
    if (!s.completed) {
      std::cerr << "kdq: run stopped at step " << s.error_step.value_or(0) << ": " << s.error
                << '\n';
      return kRuntimeFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "kdq: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}

int run_sweep(const Options& opt) {
  kdq::ExperimentSpec spec;
  try {
    std::vector<std::string> sets;
    sets.push_back("kind=detuning_sweep");
    sets.insert(sets.end(), opt.sets.begin(), opt.sets.end());
    // The default kind only applies when the file does not choose one.
    auto probe = kdq::load_config(opt.config, opt.sets);
    spec = probe.kind_explicit ? resolve(opt, opt.sets) : resolve(opt, sets);
    if (spec.kind == kdq::ExperimentKind::kSingleRun) {
      throw kdq::InvalidValue("kind", "'sweep' needs a sweep kind; use 'run'");
    }
  } catch (const std::exception& e) {
    std::cerr << "kdq: config error: " << e.what() << '\n';
    return kConfigFailure;
  }

  try {
    std::size_t workers = opt.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    const auto sweep = kdq::run_sweep(spec, workers);
    const std::filesystem::path dir = spec.output_dir;
    std::filesystem::create_directories(dir);
    if (spec.write_csv) {
      auto out = open_output(dir, "sweep.csv");
      kdq::write_sweep_csv(out, sweep);
    }
    if (spec.write_json) {
      auto out = open_output(dir, "sweep.json");
      kdq::write_sweep_json(out, spec, sweep);
    }
    const auto failures = sweep.failures();
    if (!opt.quiet) {
      std::cout << kdq::to_string(sweep.kind) << ": " << sweep.points.size() << " points, "
                << failures << " failed\n"
                << "output " << dir.string() << '\n';
    }
    if (failures == sweep.points.size()) return kRuntimeFailure;
    if (failures > 0) return kPartialSweep;
  } catch (const std::exception& e) {
    std::cerr << "kdq: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "Configuration file (key = value lines)");
  cmd->add_option("--set", opt.sets, "Override a configuration key (key=value)")
      ->allow_extra_args(false);
  cmd->add_option("--out", opt.out, "Output directory (overrides " +
                                        std::string(kdq::kOutputDirEnv) + ")");
  cmd->add_option("--format", opt.formats, "Output formats: csv, json")->delimiter(',');
  cmd->add_option("--workers", opt.workers, "Concurrent sweep points (0 = all cores)");
  cmd->add_flag("--quiet", opt.quiet, "Suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-model quasiprobability and non-Markovianity analysis"};
  app.require_subcommand(1);

  Options opt;
  auto* run = app.add_subcommand("run", "Run a single configuration");
  add_common(run, opt);
  run->add_flag("--maps", opt.maps, "Also write the reconstructed map family (maps.jsonl)");

  auto* sweep = app.add_subcommand("sweep", "Sweep detuning or anisotropy");
  add_common(sweep, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  if (run->parsed()) return run_single(opt);
  return run_sweep(opt);
}
