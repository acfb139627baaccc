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

// Per-collision witnesses of non-Markovianity: Kirkwood-Dirac energy-change
// quasiprobabilities and their non-positivity, complete-positivity checks of
// time-local maps, the RHP and LFS measures, and the average energy change.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "kdq/numerics.hpp"
#include "kdq/tomography.hpp"

namespace kdq {

/// Eigenbasis of H_S = (omega_s/2) sigma_z. Outcome 0 is |0><0| with energy
/// +omega_s/2, outcome 1 is |1><1| with energy -omega_s/2.
struct EnergyBasis {
  double omega_s = 1.0;

  ComplexMatrix projector(std::size_t level) const;
  double energy(std::size_t level) const;
};

/// q[in][fin] and the matching energy changes u[in][fin] = E_fin - E_in.
struct KdqDistribution {
  std::array<std::array<Complex, 2>, 2> q{};
  std::array<std::array<double, 2>, 2> u{};

  Complex total() const;
  /// sum over final outcomes for a fixed initial outcome.
  Complex initial_marginal(std::size_t level) const;
};

/// q[in][fin] = Tr[Pi_fin Lambda[Pi_in rho_pre]].
KdqDistribution kdq_general(const SuperOperator& sop, const ComplexMatrix& rho_pre,
                            const EnergyBasis& basis);

/// Closed form for phase covariant maps acting on a state with populations
/// (p0, p1). Throws std::invalid_argument unless p0, p1 are in [0, 1] and sum to 1.
KdqDistribution kdq_closed_form(double a, double b, double p0, double p1,
                                const EnergyBasis& basis = {});

/// -1 + sum |q|.
double nonpositivity(const KdqDistribution& kdq);

struct CpConditions {
  bool completely_positive = false;
  double a_margin = 0.0;  // min(a, 1 - a)
  double b_margin = 0.0;  // min(b, 1 - b)
  double c_margin = 0.0;  // a(1 - b) - |c|^2
  double d_margin = 0.0;  // b(1 - a) - |d|^2
};

CpConditions cp_conditions(const PhaseCovariantEntries& entries);

/// ||J||_1 / 2 - 1.
double rhp_increment(const ChoiMatrix& choi);
double min_eigenvalue(const ChoiMatrix& choi);

/// omega_s [(a - 1) p0 + b p1].
double avg_energy_change(const PhaseCovariantEntries& entries, double p0, double p1,
                         double omega_s);
/// Tr[H_S (Lambda[rho] - rho)], the definition the closed form reproduces.
double avg_energy_change_trace(const SuperOperator& sop, const ComplexMatrix& rho, double omega_s);

/// S(rho_L) + S(rho_S) - S(rho_LS) in bits, L first.
double qmi(const ComplexMatrix& rho_ls);

struct LfsSeries {
  std::vector<double> mutual_information;  // I at n = 0..N
  std::vector<double> delta_i;             // delta_i[k] = I(k + 1) - I(k)
  double measure = 0.0;
};

/// Choi matrices of the cumulative maps Lambda_0..Lambda_N. Each J/2 must be a
/// valid state to 1e-8, otherwise InvalidState is thrown.
LfsSeries lfs_series(std::span<const ChoiMatrix> cumulative, double tol_pos = 1e-10);

/// Sum of max(g_n, 0).
double rhp_measure(std::span<const double> increments);

struct WitnessRecord {
  std::size_t n = 0;
  double n_q = 0.0;
  double g_n = 0.0;
  double delta_i = 0.0;
  double avg_de = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c_abs2_margin = 0.0;
  double d_abs2_margin = 0.0;
  double choi_min_eig = 0.0;
};

}  // namespace kdq
