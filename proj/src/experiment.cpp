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

#include "kdq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace kdq {

namespace {

CollisionRow analyze_collision(std::size_t n, const AffineBlochMap& time_local,
                               const ComplexMatrix& rho_pre, double omega_s) {
  const auto sop = affine_to_superoperator(time_local);
  const auto j = choi(sop);
  const EnergyBasis basis{omega_s};

  CollisionRow row;
  row.omega_s = omega_s;
  row.entries = extract_phase_covariant(sop);
  row.cp = cp_conditions(row.entries);
  row.p0 = rho_pre(0, 0).real();
  row.p1 = rho_pre(1, 1).real();
  row.kdq = kdq_general(sop, rho_pre, basis);

  auto& w = row.witness;
  w.n = n;
  w.n_q = nonpositivity(row.kdq);
  w.g_n = rhp_increment(j);
  w.choi_min_eig = min_eigenvalue(j);
  w.avg_de = avg_energy_change(row.entries, row.p0, row.p1, omega_s);
  w.a = row.entries.a;
  w.b = row.entries.b;
  w.c_abs2_margin = row.cp.c_margin;
  w.d_abs2_margin = row.cp.d_margin;

  row.kdq_normalization_error = std::abs(row.kdq.total() - 1.0);
  row.kdq_marginal_error = std::max(std::abs(row.kdq.initial_marginal(0) - rho_pre(0, 0)),
                                    std::abs(row.kdq.initial_marginal(1) - rho_pre(1, 1)));
  const auto closed = kdq_closed_form(row.entries.a, row.entries.b, row.p0, row.p1, basis);
  for (std::size_t in = 0; in < 2; ++in)
    for (std::size_t fin = 0; fin < 2; ++fin)
      row.kdq_closed_form_error =
          std::max(row.kdq_closed_form_error, std::abs(row.kdq.q[in][fin] - closed.q[in][fin]));
  row.energy_closed_form_error =
      std::abs(w.avg_de - avg_energy_change_trace(sop, rho_pre, omega_s));
  return row;
}

void summarize(RunAnalysis& run, double tol) {
  auto& s = run.summary;
  s.rows = run.rows.size();
  std::vector<double> g;
  g.reserve(run.rows.size());
  for (const auto& row : run.rows) {
    s.sum_nq += row.witness.n_q;
    g.push_back(row.witness.g_n);
  }
  s.i_rhp = rhp_measure(g);
  s.i_lfs = run.lfs.measure;

  auto window = [&](double WitnessRecord::*field, std::optional<std::size_t>& first,
                    std::optional<std::size_t>& last, std::optional<std::size_t>& back) {
    for (const auto& row : run.rows) {
      const bool positive = row.witness.*field > tol;
      if (positive) {
        if (!first) first = row.witness.n;
        last = row.witness.n;
      } else if (first && !back) {
        back = row.witness.n;
      }
    }
  };
  window(&WitnessRecord::n_q, s.first_nq_positive, s.last_nq_positive, s.nq_return);
  window(&WitnessRecord::g_n, s.first_g_positive, s.last_g_positive, s.g_return);
}

}  // namespace

RunAnalysis analyze_run(const RunConfig& config) {
  RunAnalysis run{config, {}, {}, run_trajectory(config), {}, {}};
  run.maps = reconstruct_family(run_probe_bundle(config));

  const double omega_s = config.spins.omega_s;
  std::size_t last_map = run.maps.size() - 1;
  run.rows.reserve(config.n_max);
  for (std::size_t n = 1; n < run.maps.size(); ++n) {
    AffineBlochMap tl;
    try {
      tl = time_local_map(run.maps[n], run.maps[n - 1], config.tolerances.max_condition, n);
    } catch (const SingularMap& e) {
      run.summary.completed = false;
      run.summary.error = e.what();
      run.summary.error_step = n;
      last_map = n - 1;
      break;
    }
    run.rows.push_back(analyze_collision(n, tl, run.physical.system(n - 1), omega_s));
  }

  std::vector<ChoiMatrix> cumulative;
  cumulative.reserve(last_map + 1);
  for (std::size_t n = 0; n <= last_map; ++n) {
    cumulative.push_back(choi(affine_to_superoperator(run.maps[n])));
  }
  run.lfs = lfs_series(cumulative, config.tolerances.positive);
  // Row n carries I(n) - I(n-1).
  for (auto& row : run.rows) row.witness.delta_i = run.lfs.delta_i[row.witness.n - 1];

  summarize(run, config.tolerances.positive);
  return run;
}

std::vector<std::size_t> positive_steps(std::span<const CollisionRow> rows,
                                        double WitnessRecord::*field, double tol) {
  std::vector<std::size_t> out;
  for (const auto& row : rows) {
    if (row.witness.*field > tol) out.push_back(row.witness.n);
  }
  return out;
}

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const SweepPoint& p) { return !p.ok; }));
}

RunConfig sweep_point_config(const ExperimentSpec& spec, double grid_value) {
  RunConfig config = spec.base;
  switch (spec.kind) {
    case ExperimentKind::kDetuningSweep:
      config.spins.omega_s = config.spins.omega_m + grid_value;
      break;
    case ExperimentKind::kAnisotropySweep:
      config.couplings.sm_interaction = SmInteraction::kAnisotropic;
      config.couplings.gamma = grid_value;
      break;
    case ExperimentKind::kSingleRun:
      throw std::invalid_argument("sweep_point_config: experiment is not a sweep");
  }
  return config;
}

SweepResult run_sweep(const ExperimentSpec& spec, std::size_t workers) {
  if (spec.kind == ExperimentKind::kSingleRun) {
    throw std::invalid_argument("run_sweep: experiment is not a sweep");
  }
  if (spec.grid.empty()) throw std::invalid_argument("run_sweep: empty grid");

  SweepResult result;
  result.kind = spec.kind;
  result.points.resize(spec.grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < spec.grid.size(); i = next++) {
      auto& point = result.points[i];
      point.index = i;
      point.grid_value = spec.grid[i];
      try {
        const auto run = analyze_run(sweep_point_config(spec, spec.grid[i]));
        point.summary = run.summary;
        point.ok = run.summary.completed;
        point.error = run.summary.error;
      } catch (const std::exception& e) {
        point.ok = false;
        point.error = e.what();
      }
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, spec.grid.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  return result;
}

}  // namespace kdq
