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

#include "kdq/engine.hpp"

#include <cmath>
#include <string>

namespace kdq {

namespace {

constexpr std::array<std::size_t, 3> kSmaDims{2, 2, 2};
constexpr std::array<std::size_t, 2> kSmKeep{0, 1};

ComplexMatrix trace_out_environment(const ComplexMatrix& rho_sma) {
  return partial_trace(rho_sma, kSmaDims, kSmKeep);
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return u * rho * u.adjoint();
}

Trajectory run_from(const RunConfig& config, const ComplexMatrix& initial_system,
                    const CollisionUnitaries& unitaries, const ComplexMatrix& memory,
                    const ComplexMatrix& env) {
  const double tol = config.tolerances.state_drift;
  require_density_matrix(initial_system, tol, "initial system state");

  Trajectory out;
  out.steps.reserve(config.n_max + 1);
  JointState state{kron(initial_system, memory)};
  auto record = [&](const JointState& s) {
    TrajectoryStep step{partial_trace(s.rho_sm, {2, 2}, {0}), std::nullopt};
    if (config.keep_joint_states) step.rho_sm = s.rho_sm;
    out.steps.push_back(std::move(step));
  };
  record(state);
  for (std::size_t n = 1; n <= config.n_max; ++n) {
    try {
      state = collision_step(state, unitaries, env, tol);
    } catch (const std::exception& e) {
      throw CollisionFailure(n, e.what());
    }
    record(state);
  }
  return out;
}

}  // namespace

CollisionFailure::CollisionFailure(std::size_t step, const std::string& what)
    : std::runtime_error("collision " + std::to_string(step) + ": " + what), step_(step) {}

void require_density_matrix(const ComplexMatrix& rho, double tol, const char* what) {
  if (!rho.is_square()) throw InvalidState(std::string(what) + ": not square");
  if (!rho.is_hermitian(tol)) throw InvalidState(std::string(what) + ": not Hermitian");
  if (!rho.is_unit_trace(tol)) throw InvalidState(std::string(what) + ": trace is not 1");
  const double lowest = hermitian_eigenvalues(rho).front();
  if (lowest < -tol) {
    throw InvalidState(std::string(what) + ": negative eigenvalue " + std::to_string(lowest));
  }
}

JointState collision_step(const JointState& state, const CollisionUnitaries& unitaries,
                          const ComplexMatrix& env_state, double drift_tol) {
  const auto after_sm = trace_out_environment(conjugate(unitaries.sm, kron(state.rho_sm, env_state)));
  const auto after_ma = trace_out_environment(conjugate(unitaries.ma, kron(after_sm, env_state)));
  try {
    require_density_matrix(after_ma, drift_tol, "system-memory state");
  } catch (const InvalidState& e) {
    throw NumericalDrift(e.what());
  }
  return {after_ma};
}

Trajectory run_trajectory(const RunConfig& config) {
  validate(config.thermal);
  const auto unitaries = collision_unitaries(config.spins, config.couplings);
  return run_from(config, config.initial_system, unitaries,
                  thermal_state(config.thermal, config.spins.omega_m),
                  thermal_state(config.thermal, config.spins.omega_a));
}

std::array<Trajectory, 4> run_probe_bundle(const RunConfig& config) {
  validate(config.thermal);
  const auto unitaries = collision_unitaries(config.spins, config.couplings);
  const auto memory = thermal_state(config.thermal, config.spins.omega_m);
  const auto env = thermal_state(config.thermal, config.spins.omega_a);
  const auto probes = probe_states();
  return {run_from(config, probes.p0, unitaries, memory, env),
          run_from(config, probes.p1, unitaries, memory, env),
          run_from(config, probes.plus, unitaries, memory, env),
          run_from(config, probes.right, unitaries, memory, env)};
}

}  // namespace kdq
