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

// Experiment drivers: configuration, the single-run pipeline
// (engine -> tomography -> witnesses), parameter sweeps, and file output.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdq/engine.hpp"
#include "kdq/tomography.hpp"
#include "kdq/witnesses.hpp"

namespace kdq {

enum class ExperimentKind { kSingleRun, kDetuningSweep, kAnisotropySweep };

const char* to_string(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kSingleRun;
  /// False when the kind came from defaults rather than the file or overrides.
  bool kind_explicit = false;
  RunConfig base;
  std::vector<double> grid;
  std::string output_dir;
  bool write_csv = true;
  bool write_json = true;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingKey : public ConfigError {
 public:
  explicit MissingKey(const std::string& key);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class InvalidValue : public ConfigError {
 public:
  InvalidValue(const std::string& key, const std::string& reason);
  const std::string& key() const { return key_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string key_;
  std::string reason_;
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "KDQ_OUTPUT_DIR";
inline constexpr std::size_t kDefaultGridPoints = 101;

/// Parses `key = value` lines ('#' starts a comment). An empty path means no
/// file. Each override is `key=value` and wins over the file.
ExperimentSpec load_config(const std::string& path, std::span<const std::string> overrides = {});
ExperimentSpec parse_config(const std::string& text, std::span<const std::string> overrides = {});

/// Uniform grid of `points` values over [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

struct CollisionRow {
  WitnessRecord witness;
  double p0 = 0.0;
  double p1 = 0.0;
  double omega_s = 1.0;
  PhaseCovariantEntries entries;
  CpConditions cp;
  KdqDistribution kdq;
  // Consistency diagnostics, not serialized.
  double kdq_normalization_error = 0.0;
  double kdq_marginal_error = 0.0;
  double kdq_closed_form_error = 0.0;
  double energy_closed_form_error = 0.0;
};

struct RunSummary {
  std::size_t rows = 0;
  bool completed = true;
  std::string error;
  std::optional<std::size_t> error_step;
  double i_rhp = 0.0;
  double i_lfs = 0.0;
  double sum_nq = 0.0;
  std::optional<std::size_t> first_nq_positive;
  std::optional<std::size_t> last_nq_positive;
  /// First collision after the first positive window with N_q back below tolerance.
  std::optional<std::size_t> nq_return;
  std::optional<std::size_t> first_g_positive;
  std::optional<std::size_t> last_g_positive;
  std::optional<std::size_t> g_return;
};

struct RunAnalysis {
  RunConfig config;
  std::vector<CollisionRow> rows;  // collisions 1..rows.size()
  std::vector<AffineBlochMap> maps;  // cumulative maps, n = 0..n_max
  Trajectory physical;
  LfsSeries lfs;
  RunSummary summary;
};

/// Full pipeline for one configuration. A SingularMap while building
/// time-local maps stops the analysis; rows before it are kept and the
/// summary records the failure.
RunAnalysis analyze_run(const RunConfig& config);

/// Index helpers over a row stream (collision numbers, not vector indices).
std::vector<std::size_t> positive_steps(std::span<const CollisionRow> rows,
                                        double WitnessRecord::*field, double tol);

struct SweepPoint {
  std::size_t index = 0;
  double grid_value = 0.0;
  bool ok = true;
  std::string error;
  RunSummary summary;
};

struct SweepResult {
  ExperimentKind kind = ExperimentKind::kDetuningSweep;
  std::vector<SweepPoint> points;  // grid order

  std::size_t failures() const;
};

/// The RunConfig for one grid point of a sweep.
RunConfig sweep_point_config(const ExperimentSpec& spec, double grid_value);

/// Runs every grid point, `workers` at a time. Output order is grid order.
SweepResult run_sweep(const ExperimentSpec& spec, std::size_t workers = 1);

inline constexpr const char* kCollisionCsvHeader =
    "n,p0,p1,a,b,c_re,c_im,d_re,d_im,N_q,g_n,delta_I,avg_dE_over_omega,choi_min_eig,residual";
inline constexpr const char* kSweepCsvHeader =
    "index,grid_value,I_RHP,I_LFS,sum_Nq,status,error";
inline constexpr int kSummarySchema = 1;

/// 17 significant digits.
std::string format_real(double x);

void write_collision_csv(std::ostream& out, std::span<const CollisionRow> rows);
void write_run_summary_json(std::ostream& out, const ExperimentSpec& spec,
                            const RunAnalysis& analysis);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_sweep_json(std::ostream& out, const ExperimentSpec& spec, const SweepResult& sweep);

}  // namespace kdq
