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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kdq/model.hpp"
#include "kdq/numerics.hpp"

namespace kdq {

struct Tolerances {
  /// Allowed drift of trace, Hermiticity and positivity per collision.
  double state_drift = 1e-8;
  /// Threshold above which N_q, g_n and Delta I count as positive.
  double positive = 1e-10;
  /// Condition-number ceiling for inverting cumulative maps.
  double max_condition = 1e8;
};

/// System plus memory, 4x4.
struct JointState {
  ComplexMatrix rho_sm;
};

struct TrajectoryStep {
  ComplexMatrix rho_s;
  std::optional<ComplexMatrix> rho_sm;
};

/// Index n = 0 holds the state before the first collision.
struct Trajectory {
  std::vector<TrajectoryStep> steps;

  std::size_t size() const { return steps.size(); }
  const ComplexMatrix& system(std::size_t n) const { return steps.at(n).rho_s; }
};

struct RunConfig {
  SpinParams spins;
  CouplingParams couplings;
  ThermalSpec thermal;
  ComplexMatrix initial_system = ComplexMatrix::identity(2) * 0.5;
  std::size_t n_max = 1000;
  Tolerances tolerances;
  bool keep_joint_states = false;
};

/// Raised when a collision breaks density-matrix invariants beyond tolerance.
class NumericalDrift : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wraps a failure raised while producing collision `step`.
class CollisionFailure : public std::runtime_error {
 public:
  CollisionFailure(std::size_t step, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Throws InvalidState unless `rho` is Hermitian, unit trace and PSD to `tol`.
void require_density_matrix(const ComplexMatrix& rho, double tol, const char* what);

/// One S-M collision followed by one M-A collision with a fresh environment
/// particle in `env_state`; returns the updated S-M state.
JointState collision_step(const JointState& state, const CollisionUnitaries& unitaries,
                          const ComplexMatrix& env_state, double drift_tol = 1e-8);

Trajectory run_trajectory(const RunConfig& config);

/// Trajectories of P0, P1, P+, PR under `config` (its initial state is ignored).
std::array<Trajectory, 4> run_probe_bundle(const RunConfig& config);

}  // namespace kdq
