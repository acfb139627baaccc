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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kdq/experiment.hpp"
#include "kdq/model.hpp"
#include "oracles.hpp"

using namespace kdq;

namespace {

constexpr double kTolPos = 1e-10;
// Decision threshold for N_q > 0 on exact closed-form inputs.
constexpr double kRoundoff = 1e-14;

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RunConfig reference_config() { return RunConfig{}; }

/// Runs analyze_run over configs on all cores, in input order.
std::vector<RunAnalysis> analyze_all(const std::vector<RunConfig>& configs) {
  std::vector<RunAnalysis> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) out[i] = analyze_run(configs[i]);
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::max(1u, std::thread::hardware_concurrency());
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
  }
  return out;
}

std::vector<RunConfig> grid_configs(ExperimentKind kind, double lo, double hi) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.base = reference_config();
  std::vector<RunConfig> configs;
  for (double v : uniform_grid(lo, hi, kDefaultGridPoints)) {
    configs.push_back(sweep_point_config(spec, v));
  }
  return configs;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

/// Every element of `a` has an element of `b` within `slack`.
std::vector<std::size_t> unmatched(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b, std::size_t slack) {
  const std::set<std::size_t> other(b.begin(), b.end());
  std::vector<std::size_t> out;
  for (std::size_t n : a) {
    bool hit = false;
    for (std::size_t m = n > slack ? n - slack : 0; m <= n + slack && !hit; ++m) {
      hit = other.count(m) > 0;
    }
    if (!hit) out.push_back(n);
  }
  return out;
}

std::string list(const std::vector<std::size_t>& v, std::size_t limit = 8) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < std::min(v.size(), limit); ++i) s << (i ? "," : "") << v[i];
  if (v.size() > limit) s << ",... " << v.size() << " total";
  s << ']';
  return s.str();
}

std::string opt(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("none");
}

bool within(const std::optional<std::size_t>& v, double target, double slack) {
  return v && std::abs(static_cast<double>(*v) - target) <= slack;
}

void criterion_1(const RunAnalysis& run, double seconds) {
  const auto& s = run.summary;
  const bool pass = s.completed && within(s.first_nq_positive, 39, 1) &&
                    within(s.nq_return, 77, 1) && within(s.g_return, 79, 1) && seconds < 10.0;
  report(1, pass,
         fmt("first N_q>tol at %s (39+-1), N_q back below at %s (77+-1), g back below at %s "
             "(79+-1), runtime %.3f s (<10)",
             opt(s.first_nq_positive).c_str(), opt(s.nq_return).c_str(), opt(s.g_return).c_str(),
             seconds));
}

void criterion_2(const std::vector<const RunAnalysis*>& runs) {
  std::size_t checked = 0, violations = 0;
  for (const auto* run : runs) {
    for (const auto& row : run->rows) {
      if (row.witness.n_q > kTolPos) {
        ++checked;
        if (!(row.witness.choi_min_eig < -kTolPos)) ++violations;
      }
    }
  }
  report(2, violations == 0 && checked > 0,
         fmt("%zu runs, %zu steps with N_q>tol, %zu without a negative Choi eigenvalue",
             runs.size(), checked, violations));
}

void criterion_3() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  std::size_t points = 0, mismatches = 0;
  while (points < 10000) {
    const double a = u(rng), b = u(rng);
    auto gap = [](double x) { return std::min(std::abs(x), std::abs(x - 1.0)); };
    if (gap(a) < 1e-12 || gap(b) < 1e-12) continue;
    const bool outside = a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0;
    for (double p0 : {0.1, 0.5, 0.9}) {
      const bool negative = nonpositivity(kdq_closed_form(a, b, p0, 1.0 - p0)) > kRoundoff;
      if (negative != outside) ++mismatches;
      ++points;
    }
  }
  report(3, mismatches == 0, fmt("%zu (a,b,p0) samples, %zu mismatches", points, mismatches));
}

void criterion_4(const RunAnalysis& run) {
  double max_g = -1e300, max_nq = -1e300, max_di = -1e300;
  for (const auto& row : run.rows) {
    max_g = std::max(max_g, row.witness.g_n);
    max_nq = std::max(max_nq, row.witness.n_q);
    max_di = std::max(max_di, row.witness.delta_i);
  }
  const bool pass = run.summary.completed && run.rows.size() == 200 && max_g <= kTolPos &&
                    max_nq <= kTolPos && max_di <= kTolPos;
  report(4, pass, fmt("swap-refresh limit over %zu steps: max g %.3e, max N_q %.3e, max dI %.3e",
                      run.rows.size(), max_g, max_nq, max_di));
}

void criterion_5() {
  RunConfig config = reference_config();
  const auto family = reconstruct_family(run_probe_bundle(config));
  oracle::Rng rng(5150);
  std::vector<ComplexMatrix> initial;
  for (int i = 0; i < 20; ++i) {
    initial.push_back(i % 2 ? oracle::random_pure(2, rng) : oracle::random_density(2, rng));
  }
  std::vector<double> worst(initial.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < initial.size(); i = next++) {
      RunConfig c = config;
      c.initial_system = initial[i];
      const auto direct = run_trajectory(c);
      const auto r0 = oracle::bloch(initial[i]);
      for (std::size_t n = 0; n <= c.n_max; ++n) {
        const auto predicted = family[n].apply({r0[0], r0[1], r0[2]});
        const auto actual = oracle::bloch(direct.system(n));
        worst[i] = std::max(worst[i], std::hypot(predicted[0] - actual[0],
                                                 predicted[1] - actual[1],
                                                 predicted[2] - actual[2]));
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < std::max(1u, std::thread::hardware_concurrency()); ++w) {
      pool.emplace_back(worker);
    }
    worker();
  }
  const double max_dev = *std::max_element(worst.begin(), worst.end());
  report(5, max_dev <= 1e-9,
         fmt("20 initial states, n<=1000: max Bloch deviation %.3e (<=1e-9)", max_dev));
}

void criterion_6(const RunAnalysis& resonant, const RunAnalysis& detuned,
                 const RunAnalysis& anisotropic) {
  auto worst = [](const RunAnalysis& run, double& residual, double& d) {
    residual = 0.0;
    d = 0.0;
    for (const auto& row : run.rows) {
      residual = std::max(residual, row.entries.off_pattern_residual);
      d = std::max(d, std::abs(row.entries.d));
    }
  };
  double r0, d0, r1, d1, r2, d2;
  worst(resonant, r0, d0);
  worst(detuned, r1, d1);
  worst(anisotropic, r2, d2);
  const bool pass = resonant.summary.completed && detuned.summary.completed &&
                    r0 <= 1e-10 && d0 <= 1e-10 && r1 <= 1e-10 && d1 <= 1e-10 && d2 > 1e-6;
  report(6, pass,
         fmt("resonant: residual %.2e |d| %.2e; detuned -0.2: residual %.2e |d| %.2e; "
             "gamma=0.5: max |d| %.3e (>1e-6)",
             r0, d0, r1, d1, d2));
}

void criterion_7(const RunAnalysis& run) {
  const auto nq = positive_steps(run.rows, &WitnessRecord::n_q, kTolPos);
  double initial = 0.0;
  for (const auto& row : run.rows) {
    if (std::abs(row.witness.avg_de) > kTolPos) {
      initial = row.witness.avg_de;
      break;
    }
  }
  std::vector<std::size_t> flips;
  for (const auto& row : run.rows) {
    if (row.witness.avg_de * initial < 0.0 && std::abs(row.witness.avg_de) > kTolPos) {
      flips.push_back(row.witness.n);
    }
  }
  const auto outside = unmatched(flips, nq, 1);
  report(7, !flips.empty() && outside.empty(),
         fmt("%zu sign-reversed steps, %zu outside the N_q>tol window (+-1) %s", flips.size(),
             outside.size(), list(outside).c_str()));
}

void criterion_8(const RunAnalysis& run) {
  const auto di = positive_steps(run.rows, &WitnessRecord::delta_i, kTolPos);
  const auto g = positive_steps(run.rows, &WitnessRecord::g_n, kTolPos);
  const auto di_only = unmatched(di, g, 1);
  const auto g_only = unmatched(g, di, 1);
  report(8, !di.empty() && di_only.empty() && g_only.empty(),
         fmt("%zu steps dI>tol, %zu steps g>tol; dI-only (+-1) %s; g-only (+-1) %s", di.size(),
             g.size(), list(di_only).c_str(), list(g_only).c_str()));
}

void criterion_9(const std::vector<RunAnalysis>& detuning,
                 const std::vector<RunAnalysis>& anisotropy) {
  const auto dgrid = uniform_grid(-0.5, 0.5, kDefaultGridPoints);
  const auto agrid = uniform_grid(-1.0, 1.0, kDefaultGridPoints);
  auto series = [](const std::vector<RunAnalysis>& runs, int which) {
    std::vector<double> v;
    for (const auto& r : runs) {
      v.push_back(which == 0 ? r.summary.i_rhp : which == 1 ? r.summary.i_lfs : r.summary.sum_nq);
    }
    return v;
  };
  const char* names[] = {"I_RHP", "I_LFS", "sum_Nq"};

  std::size_t peak[3];
  bool complete = true;
  for (const auto& r : detuning) complete = complete && r.summary.completed;
  for (int k = 0; k < 3; ++k) peak[k] = argmax(series(detuning, k));
  const bool coincide = peak[0] == peak[1] && peak[1] == peak[2];
  bool in_range = true;
  for (int k = 0; k < 3; ++k) {
    in_range = in_range && dgrid[peak[k]] >= -0.05 - 1e-12 && dgrid[peak[k]] <= 1e-12;
  }
  std::string detail = fmt("detuning argmax %s=%.2f %s=%.2f %s=%.2f (required: one shared point in [-0.05,0])",
                           names[0], dgrid[peak[0]], names[1], dgrid[peak[1]], names[2],
                           dgrid[peak[2]]);

  std::size_t centre = 0;
  for (std::size_t i = 1; i < agrid.size(); ++i) {
    if (std::abs(agrid[i]) < std::abs(agrid[centre])) centre = i;
  }
  const bool interior = centre > 0 && centre + 1 < agrid.size();
  bool minima = interior;
  detail += "; anisotropy at gamma nearest 0:";
  for (int k = 0; k < 3; ++k) {
    const auto v = series(anisotropy, k);
    const bool local_min = interior && v[centre] < v[centre - 1] && v[centre] < v[centre + 1];
    detail += fmt(" %s %s (%.9g | %.9g | %.9g)", names[k], local_min ? "min" : "NOT-min",
                  v[centre - 1], v[centre], v[centre + 1]);
    minima = minima && local_min;
  }
  for (const auto& r : anisotropy) complete = complete && r.summary.completed;
  report(9, complete && coincide && in_range && minima, detail);
}

void criterion_10(const std::vector<const RunAnalysis*>& runs) {
  double norm = 0.0, marginal = 0.0, closed = 0.0;
  std::size_t rows = 0;
  for (const auto* run : runs) {
    for (const auto& row : run->rows) {
      norm = std::max(norm, row.kdq_normalization_error);
      marginal = std::max(marginal, row.kdq_marginal_error);
      closed = std::max(closed, row.kdq_closed_form_error);
      ++rows;
    }
  }
  report(10, norm <= 1e-12 && marginal <= 1e-12 && closed <= 1e-12,
         fmt("%zu steps: max |sum q - 1| %.2e, marginal %.2e, general vs closed form %.2e", rows,
             norm, marginal, closed));
}

void criterion_11() {
  oracle::Rng rng(11);
  double roundtrip = 0.0;
  for (std::size_t n : {2u, 4u, 8u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto h = oracle::random_hermitian(n, rng);
      const auto eig = hermitian_eig(h);
      ComplexMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = eig.eigenvalues[i];
      roundtrip = std::max(roundtrip,
                           max_abs_diff(eig.eigenvectors * d * eig.eigenvectors.adjoint(), h));
    }
  }
  double unitarity = 0.0;
  for (double ws : {0.5, 0.8, 1.0, 1.5}) {
    for (double gamma : {0.0, -1.0, -0.5, 0.5, 1.0}) {
      for (double tau : {0.0, 0.2, 1.0, std::numbers::pi / 0.4}) {
        CouplingParams c;
        c.tau1 = c.tau2 = tau;
        c.gamma = gamma;
        c.sm_interaction = gamma == 0.0 ? SmInteraction::kIsotropic : SmInteraction::kAnisotropic;
        const auto u = collision_unitaries(SpinParams{ws, 1.0, 1.0}, c);
        const auto id = ComplexMatrix::identity(8);
        unitarity = std::max({unitarity, max_abs_diff(u.sm.adjoint() * u.sm, id),
                              max_abs_diff(u.ma.adjoint() * u.ma, id)});
      }
    }
  }
  const double entropy = von_neumann_entropy(ComplexMatrix::identity(2) * 0.5);
  const bool trace_norms = trace_norm(ComplexMatrix::diagonal({0.3, -0.7})) == 1.0 &&
                           trace_norm(ComplexMatrix::diagonal({1.1, -0.1, 0, 1})) == 2.2;
  report(11,
         roundtrip <= 1e-12 && unitarity <= 1e-12 && std::abs(entropy - 1.0) <= 1e-12 &&
             trace_norms,
         fmt("eigen roundtrip %.2e, unitarity %.2e, S(I/2)-1 = %.1e, diagonal trace norms %s",
             roundtrip, unitarity, entropy - 1.0, trace_norms ? "exact" : "inexact"));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto reference_run = analyze_run(reference_config());
  const double reference_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunConfig markov = reference_config();
  markov.n_max = 200;
  markov.couplings.tau2 = std::numbers::pi / 0.4;
  RunConfig detuned = reference_config();
  detuned.spins.omega_s = 0.8;
  RunConfig aniso = reference_config();
  aniso.couplings.sm_interaction = SmInteraction::kAnisotropic;
  aniso.couplings.gamma = 0.5;
  const auto extra = analyze_all({markov, detuned, aniso});

  std::printf("running sweeps (2 x %zu points, n_max = 1000)\n", kDefaultGridPoints);
  std::fflush(stdout);
  const auto detuning = analyze_all(grid_configs(ExperimentKind::kDetuningSweep, -0.5, 0.5));
  const auto anisotropy = analyze_all(grid_configs(ExperimentKind::kAnisotropySweep, -1.0, 1.0));

  std::vector<const RunAnalysis*> theorem_runs{&reference_run};
  for (const auto& r : detuning) theorem_runs.push_back(&r);
  for (const auto& r : anisotropy) theorem_runs.push_back(&r);
  std::vector<const RunAnalysis*> all_runs = theorem_runs;
  for (const auto& r : extra) all_runs.push_back(&r);

  criterion_1(reference_run, reference_seconds);
  criterion_2(theorem_runs);
  criterion_3();
  criterion_4(extra[0]);
  criterion_5();
  criterion_6(reference_run, extra[1], extra[2]);
  criterion_7(reference_run);
  criterion_8(reference_run);
  criterion_9(detuning, anisotropy);
  criterion_10(all_runs);
  criterion_11();

  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
