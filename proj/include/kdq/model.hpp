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

// Physical ingredients of the memory-mediated collision model. Natural units
// (hbar = k_B = 1). Three-qubit operators use the ordering S (x) M (x) A.

#pragma once

#include <array>

#include "kdq/numerics.hpp"

namespace kdq {

/// Largest supported inverse temperature.
inline constexpr double kMaxBeta = 1e3;

struct SpinParams {
  double omega_s = 1.0;
  double omega_m = 1.0;
  double omega_a = 1.0;

  double detuning() const { return omega_s - omega_m; }
};

enum class SmInteraction { kIsotropic, kAnisotropic };

struct CouplingParams {
  double g_sm = 0.2;
  double g_ma = 0.2;
  double tau1 = 0.2;
  double tau2 = 0.2;
  /// Only used by SmInteraction::kAnisotropic.
  double gamma = 0.0;
  double anisotropy_strength = 1.0;
  SmInteraction sm_interaction = SmInteraction::kIsotropic;

  double step() const { return tau1 + tau2; }
};

struct ThermalSpec {
  double beta = 1.0;
};

/// Throws std::invalid_argument on non-finite values, negative durations,
/// gamma outside [-1, 1], or beta outside [0, kMaxBeta].
void validate(const SpinParams& spins);
void validate(const CouplingParams& couplings);
void validate(const ThermalSpec& thermal);

/// (omega / 2) sigma_z.
ComplexMatrix local_hamiltonian(double omega);

/// (g / 2)(XX + YY + ZZ).
ComplexMatrix heisenberg_interaction(double g);

/// strength * [(1 - gamma)/2 XX + (1 + gamma)/2 YY + ZZ].
ComplexMatrix anisotropic_sm_interaction(double gamma, double strength = 1.0);

/// H_S + H_M + H_A on the 8-dimensional space.
ComplexMatrix free_hamiltonian(const SpinParams& spins);

/// The S-M interaction selected by `couplings`, as a 4x4 operator.
ComplexMatrix sm_interaction(const CouplingParams& couplings);

struct CollisionUnitaries {
  ComplexMatrix sm;  // exp(-i (H0 + H_SM (x) I_A) tau1)
  ComplexMatrix ma;  // exp(-i (H0 + I_S (x) H_MA) tau2)
};

CollisionUnitaries collision_unitaries(const SpinParams& spins, const CouplingParams& couplings);

/// Gibbs state exp(-beta H)/Z of H = (omega/2) sigma_z.
ComplexMatrix thermal_state(const ThermalSpec& spec, double omega);

/// The four tomography inputs P0, P1, P+, PR in that order.
struct ProbeStates {
  ComplexMatrix p0;
  ComplexMatrix p1;
  ComplexMatrix plus;
  ComplexMatrix right;

  std::array<const ComplexMatrix*, 4> all() const { return {&p0, &p1, &plus, &right}; }
};

ProbeStates probe_states();

/// Projector onto (|00> + |11>)/sqrt(2).
ComplexMatrix maximally_entangled_state();

}  // namespace kdq
