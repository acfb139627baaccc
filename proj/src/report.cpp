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

#include <cstdio>

#include "json.hpp"
#include "kdq/experiment.hpp"

namespace kdq {

namespace {

using nlohmann::ordered_json;

ordered_json optional_index(const std::optional<std::size_t>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string csv_safe(std::string s) {
  for (auto& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["omega_s"] = c.spins.omega_s;
  j["omega_m"] = c.spins.omega_m;
  j["omega_a"] = c.spins.omega_a;
  j["g_sm"] = c.couplings.g_sm;
  j["g_ma"] = c.couplings.g_ma;
  j["tau1"] = c.couplings.tau1;
  j["tau2"] = c.couplings.tau2;
  j["beta"] = c.thermal.beta;
  j["sm_interaction"] =
      c.couplings.sm_interaction == SmInteraction::kAnisotropic ? "anisotropic" : "isotropic";
  j["gamma"] = c.couplings.gamma;
  j["anisotropy_strength"] = c.couplings.anisotropy_strength;
  j["n_max"] = c.n_max;
  return j;
}

ordered_json summary_json(const RunSummary& s) {
  ordered_json j;
  j["rows"] = s.rows;
  j["completed"] = s.completed;
  j["error"] = s.completed ? ordered_json(nullptr) : ordered_json(s.error);
  j["error_step"] = optional_index(s.error_step);
  j["I_RHP"] = s.i_rhp;
  j["I_LFS"] = s.i_lfs;
  j["sum_Nq"] = s.sum_nq;
  j["first_Nq_positive"] = optional_index(s.first_nq_positive);
  j["last_Nq_positive"] = optional_index(s.last_nq_positive);
  j["Nq_return"] = optional_index(s.nq_return);
  j["first_g_positive"] = optional_index(s.first_g_positive);
  j["last_g_positive"] = optional_index(s.last_g_positive);
  j["g_return"] = optional_index(s.g_return);
  return j;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_collision_csv(std::ostream& out, std::span<const CollisionRow> rows) {
  out << kCollisionCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& w = row.witness;
    const double values[] = {row.p0,
                             row.p1,
                             w.a,
                             w.b,
                             row.entries.c.real(),
                             row.entries.c.imag(),
                             row.entries.d.real(),
                             row.entries.d.imag(),
                             w.n_q,
                             w.g_n,
                             w.delta_i,
                             w.avg_de / row.omega_s,
                             w.choi_min_eig,
                             row.entries.off_pattern_residual};
    out << w.n;
    for (double v : values) out << ',' << format_real(v);
    out << '\n';
  }
}

void write_run_summary_json(std::ostream& out, const ExperimentSpec& spec,
                            const RunAnalysis& analysis) {
  ordered_json j;
  j["schema"] = kSummarySchema;
  j["kind"] = to_string(ExperimentKind::kSingleRun);
  j["config"] = config_json(analysis.config);
  j["tol_pos"] = analysis.config.tolerances.positive;
  j["csv_header"] = kCollisionCsvHeader;
  j["summary"] = summary_json(analysis.summary);
  (void)spec;
  out << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : sweep.points) {
    out << p.index << ',' << format_real(p.grid_value) << ',' << format_real(p.summary.i_rhp)
        << ',' << format_real(p.summary.i_lfs) << ',' << format_real(p.summary.sum_nq) << ','
        << (p.ok ? "ok" : "error") << ',' << csv_safe(p.error) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const ExperimentSpec& spec, const SweepResult& sweep) {
  ordered_json j;
  j["schema"] = kSummarySchema;
  j["kind"] = to_string(sweep.kind);
  j["base_config"] = config_json(spec.base);
  j["grid_points"] = sweep.points.size();
  j["failures"] = sweep.failures();
  auto points = ordered_json::array();
  for (const auto& p : sweep.points) {
    ordered_json pj;
    pj["index"] = p.index;
    pj["grid_value"] = p.grid_value;
    pj["status"] = p.ok ? "ok" : "error";
    pj["error"] = p.ok ? ordered_json(nullptr) : ordered_json(p.error);
    pj["I_RHP"] = p.summary.i_rhp;
    pj["I_LFS"] = p.summary.i_lfs;
    pj["sum_Nq"] = p.summary.sum_nq;
    pj["summary"] = summary_json(p.summary);
    points.push_back(std::move(pj));
  }
  j["points"] = std::move(points);
  out << j.dump(2) << '\n';
}

}  // namespace kdq
