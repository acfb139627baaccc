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

#include "kdq/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdq {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

ComplexMatrix pauli_pair_sum(double wx, double wy, double wz) {
  return kron(pauli::x(), pauli::x()) * wx + kron(pauli::y(), pauli::y()) * wy +
         kron(pauli::z(), pauli::z()) * wz;
}

}  // namespace

void validate(const SpinParams& spins) {
  require_finite(spins.omega_s, "omega_s");
  require_finite(spins.omega_m, "omega_m");
  require_finite(spins.omega_a, "omega_a");
}

void validate(const CouplingParams& couplings) {
  require_finite(couplings.g_sm, "g_sm");
  require_finite(couplings.g_ma, "g_ma");
  require_finite(couplings.tau1, "tau1");
  require_finite(couplings.tau2, "tau2");
  require_finite(couplings.gamma, "gamma");
  require_finite(couplings.anisotropy_strength, "anisotropy_strength");
  if (couplings.tau1 < 0.0 || couplings.tau2 < 0.0) {
    throw std::invalid_argument("collision durations must be non-negative");
  }
  if (couplings.gamma < -1.0 || couplings.gamma > 1.0) {
    throw std::invalid_argument("gamma must lie in [-1, 1]");
  }
}

void validate(const ThermalSpec& thermal) {
  require_finite(thermal.beta, "beta");
  if (thermal.beta < 0.0) throw std::invalid_argument("beta must be non-negative");
  if (thermal.beta > kMaxBeta) {
    throw std::invalid_argument("beta above " + std::to_string(kMaxBeta) + " is not supported");
  }
}

ComplexMatrix local_hamiltonian(double omega) { return pauli::z() * (omega / 2.0); }

ComplexMatrix heisenberg_interaction(double g) {
  return pauli_pair_sum(g / 2.0, g / 2.0, g / 2.0);
}

ComplexMatrix anisotropic_sm_interaction(double gamma, double strength) {
  if (gamma < -1.0 || gamma > 1.0) throw std::invalid_argument("gamma must lie in [-1, 1]");
  return pauli_pair_sum(strength * (1.0 - gamma) / 2.0, strength * (1.0 + gamma) / 2.0,
                        strength);
}

ComplexMatrix free_hamiltonian(const SpinParams& spins) {
  const auto id = pauli::i2();
  return kron(kron(local_hamiltonian(spins.omega_s), id), id) +
         kron(kron(id, local_hamiltonian(spins.omega_m)), id) +
         kron(kron(id, id), local_hamiltonian(spins.omega_a));
}

ComplexMatrix sm_interaction(const CouplingParams& couplings) {
  if (couplings.sm_interaction == SmInteraction::kAnisotropic) {
    return anisotropic_sm_interaction(couplings.gamma, couplings.anisotropy_strength);
  }
  return heisenberg_interaction(couplings.g_sm);
}

CollisionUnitaries collision_unitaries(const SpinParams& spins, const CouplingParams& couplings) {
  validate(spins);
  validate(couplings);
  const auto h0 = free_hamiltonian(spins);
  const auto id = pauli::i2();
  const auto h_sm = h0 + kron(sm_interaction(couplings), id);
  const auto h_ma = h0 + kron(id, heisenberg_interaction(couplings.g_ma));
  return {exp_hermitian_generator(h_sm, couplings.tau1),
          exp_hermitian_generator(h_ma, couplings.tau2)};
}

ComplexMatrix thermal_state(const ThermalSpec& spec, double omega) {
  validate(spec);
  require_finite(omega, "omega");
  // Weights relative to the ground level keep the exponentials bounded.
  const double x = spec.beta * std::abs(omega);
  const double excited = std::exp(-x) / (1.0 + std::exp(-x));
  const double ground = 1.0 / (1.0 + std::exp(-x));
  // |0> carries energy +omega/2.
  return omega >= 0.0 ? ComplexMatrix::diagonal({excited, ground})
                      : ComplexMatrix::diagonal({ground, excited});
}

ProbeStates probe_states() {
  const Complex i(0.0, 1.0);
  return {
      ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
      ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}},
      ComplexMatrix{{0.5, -0.5 * i}, {0.5 * i, 0.5}},
  };
}

ComplexMatrix maximally_entangled_state() {
  ComplexMatrix m(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

}  // namespace kdq
