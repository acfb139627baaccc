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

#include "kdq/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kdq/engine.hpp"
#include "kdq/model.hpp"

namespace kdq {

ComplexMatrix EnergyBasis::projector(std::size_t level) const {
  if (level > 1) throw std::out_of_range("EnergyBasis: qubit level must be 0 or 1");
  ComplexMatrix p(2, 2);
  p(level, level) = 1.0;
  return p;
}

double EnergyBasis::energy(std::size_t level) const {
  if (level > 1) throw std::out_of_range("EnergyBasis: qubit level must be 0 or 1");
  return level == 0 ? omega_s / 2.0 : -omega_s / 2.0;
}

Complex KdqDistribution::total() const {
  return q[0][0] + q[0][1] + q[1][0] + q[1][1];
}

Complex KdqDistribution::initial_marginal(std::size_t level) const {
  return q.at(level)[0] + q.at(level)[1];
}

namespace {

void fill_energy_changes(KdqDistribution& kdq, const EnergyBasis& basis) {
  for (std::size_t in = 0; in < 2; ++in)
    for (std::size_t fin = 0; fin < 2; ++fin) kdq.u[in][fin] = basis.energy(fin) - basis.energy(in);
}

}  // namespace

KdqDistribution kdq_general(const SuperOperator& sop, const ComplexMatrix& rho_pre,
                            const EnergyBasis& basis) {
  KdqDistribution out;
  for (std::size_t in = 0; in < 2; ++in) {
    const auto evolved = sop.apply(basis.projector(in) * rho_pre);
    for (std::size_t fin = 0; fin < 2; ++fin) {
      out.q[in][fin] = (basis.projector(fin) * evolved).trace();
    }
  }
  fill_energy_changes(out, basis);
  return out;
}

KdqDistribution kdq_closed_form(double a, double b, double p0, double p1,
                                const EnergyBasis& basis) {
  constexpr double kNormTol = 1e-12;
  if (p0 < -kNormTol || p1 < -kNormTol || p0 > 1.0 + kNormTol || p1 > 1.0 + kNormTol ||
      std::abs(p0 + p1 - 1.0) > kNormTol) {
    throw std::invalid_argument("kdq_closed_form: populations must be a probability vector");
  }
  KdqDistribution out;
  out.q[0][0] = a * p0;
  out.q[0][1] = (1.0 - a) * p0;
  out.q[1][0] = b * p1;
  out.q[1][1] = (1.0 - b) * p1;
  fill_energy_changes(out, basis);
  return out;
}

double nonpositivity(const KdqDistribution& kdq) {
  double s = 0.0;
  for (const auto& row : kdq.q)
    for (const auto& x : row) s += std::abs(x);
  return std::max(0.0, s - 1.0);
}

CpConditions cp_conditions(const PhaseCovariantEntries& e) {
  CpConditions out;
  out.a_margin = std::min(e.a, 1.0 - e.a);
  out.b_margin = std::min(e.b, 1.0 - e.b);
  out.c_margin = e.a * (1.0 - e.b) - std::norm(e.c);
  out.d_margin = e.b * (1.0 - e.a) - std::norm(e.d);
  out.completely_positive =
      out.a_margin >= 0.0 && out.b_margin >= 0.0 && out.c_margin >= 0.0 && out.d_margin >= 0.0;
  return out;
}

double rhp_increment(const ChoiMatrix& choi) { return trace_norm(choi.j) / 2.0 - 1.0; }

double min_eigenvalue(const ChoiMatrix& choi) { return hermitian_eigenvalues(choi.j).front(); }

double avg_energy_change(const PhaseCovariantEntries& e, double p0, double p1, double omega_s) {
  return omega_s * ((e.a - 1.0) * p0 + e.b * p1);
}

double avg_energy_change_trace(const SuperOperator& sop, const ComplexMatrix& rho,
                               double omega_s) {
  const auto h = local_hamiltonian(omega_s);
  return (h * (sop.apply(rho) - rho)).trace().real();
}

double qmi(const ComplexMatrix& rho_ls) {
  if (rho_ls.rows() != 4 || rho_ls.cols() != 4) throw DimensionMismatch("qmi: expected 4x4");
  const auto rho_l = partial_trace(rho_ls, {2, 2}, {0});
  const auto rho_s = partial_trace(rho_ls, {2, 2}, {1});
  return von_neumann_entropy(rho_l) + von_neumann_entropy(rho_s) - von_neumann_entropy(rho_ls);
}

LfsSeries lfs_series(std::span<const ChoiMatrix> cumulative, double tol_pos) {
  LfsSeries out;
  out.mutual_information.reserve(cumulative.size());
  for (std::size_t n = 0; n < cumulative.size(); ++n) {
    const auto rho_ls = cumulative[n].j * 0.5;
    require_density_matrix(rho_ls, 1e-8,
                           ("reference-system state at step " + std::to_string(n)).c_str());
    out.mutual_information.push_back(qmi(rho_ls));
  }
  for (std::size_t n = 1; n < out.mutual_information.size(); ++n) {
    const double delta = out.mutual_information[n] - out.mutual_information[n - 1];
    out.delta_i.push_back(delta);
    if (delta > tol_pos) out.measure += delta;
  }
  return out;
}

double rhp_measure(std::span<const double> increments) {
  double s = 0.0;
  for (double g : increments) s += std::max(g, 0.0);
  return s;
}

}  // namespace kdq
