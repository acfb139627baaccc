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

#include "kdq/tomography.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace kdq {

namespace {

const std::array<ComplexMatrix, 3>& paulis() {
  static const std::array<ComplexMatrix, 3> kPaulis{pauli::x(), pauli::y(), pauli::z()};
  return kPaulis;
}

double half_trace_with(const ComplexMatrix& sigma, const ComplexMatrix& m) {
  return 0.5 * (sigma * m).trace().real();
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Vec3 mat_vec(const Mat3& a, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out[i] += a[i][k] * v[k];
  return out;
}

double frobenius(const Mat3& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

// Operator x_I I + x . sigma for complex coefficients.
ComplexMatrix pauli_operator(Complex x_i, const std::array<Complex, 3>& x) {
  const Complex i(0.0, 1.0);
  return {{x_i + x[2], x[0] - i * x[1]}, {x[0] + i * x[1], x_i - x[2]}};
}

}  // namespace

AffineBlochMap AffineBlochMap::identity() {
  AffineBlochMap out;
  for (int i = 0; i < 3; ++i) out.m[i][i] = 1.0;
  return out;
}

Vec3 AffineBlochMap::apply(const Vec3& r) const {
  Vec3 out = mat_vec(m, r);
  for (int i = 0; i < 3; ++i) out[i] += c[i];
  return out;
}

AffineBlochMap compose(const AffineBlochMap& outer, const AffineBlochMap& inner) {
  return {mat_mul(outer.m, inner.m), outer.apply(inner.c)};
}

Vec3 bloch_vector(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionMismatch("bloch_vector: expected 2x2");
  const auto& s = paulis();
  return {(s[0] * rho).trace().real(), (s[1] * rho).trace().real(),
          (s[2] * rho).trace().real()};
}

ComplexMatrix density_from_bloch(const Vec3& r) {
  return pauli_operator(0.5, {0.5 * r[0], 0.5 * r[1], 0.5 * r[2]});
}

AffineBlochMap reconstruct_affine(const ProbeImages& images) {
  // I = P0 + P1, sigma_x = 2P+ - I, sigma_y = 2PR - I, sigma_z = P0 - P1.
  const auto image_id = images.p0 + images.p1;
  const std::array<ComplexMatrix, 3> image_sigma{images.plus * 2.0 - image_id,
                                                 images.right * 2.0 - image_id,
                                                 images.p0 - images.p1};
  const auto& s = paulis();
  AffineBlochMap out;
  for (int i = 0; i < 3; ++i) {
    out.c[i] = half_trace_with(s[i], image_id);
    for (int j = 0; j < 3; ++j) out.m[i][j] = half_trace_with(s[i], image_sigma[j]);
  }
  return out;
}

AffineBlochMap reconstruct_affine(const std::array<Vec3, 4>& probe_blochs) {
  return reconstruct_affine(ProbeImages{
      density_from_bloch(probe_blochs[0]), density_from_bloch(probe_blochs[1]),
      density_from_bloch(probe_blochs[2]), density_from_bloch(probe_blochs[3])});
}

std::vector<AffineBlochMap> reconstruct_family(const std::array<Trajectory, 4>& probes) {
  const std::size_t len = probes[0].size();
  for (const auto& t : probes) {
    if (t.size() != len) throw DimensionMismatch("probe trajectories differ in length");
  }
  std::vector<AffineBlochMap> family;
  family.reserve(len);
  for (std::size_t n = 0; n < len; ++n) {
    family.push_back(reconstruct_affine(ProbeImages{probes[0].system(n), probes[1].system(n),
                                                    probes[2].system(n), probes[3].system(n)}));
  }
  return family;
}

SingularMap::SingularMap(std::size_t step, double det, double cond)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "cumulative map at step " << step << " is not invertible (det " << det
           << ", condition " << cond << ")";
        return os.str();
      }()),
      step_(step),
      det_(det),
      cond_(cond) {}

AffineBlochMap invert_affine(const AffineBlochMap& map, double cond_threshold, std::size_t step) {
  const auto& m = map.m;
  Mat3 adj{};
  adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  adj[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  adj[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  adj[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  adj[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
  if (!std::isfinite(det) || std::abs(det) < kSingularDeterminant) {
    throw SingularMap(step, det, INFINITY);
  }
  AffineBlochMap inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv.m[i][j] = adj[i][j] / det;
  const double cond = frobenius(m) * frobenius(inv.m);
  if (!(cond <= cond_threshold)) throw SingularMap(step, det, cond);
  const Vec3 shifted = mat_vec(inv.m, map.c);
  for (int i = 0; i < 3; ++i) inv.c[i] = -shifted[i];
  return inv;
}

AffineBlochMap time_local_map(const AffineBlochMap& lambda_n, const AffineBlochMap& lambda_nm1,
                              double cond_threshold, std::size_t step) {
  const auto step_back = step == 0 ? 0 : step - 1;
  return compose(lambda_n, invert_affine(lambda_nm1, cond_threshold, step_back));
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionMismatch("SuperOperator: expected 2x2");
  ComplexMatrix out(2, 2);
  for (std::size_t r = 0; r < 4; ++r) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) s += matrix(r, k) * rho(k / 2, k % 2);
    out(r / 2, r % 2) = s;
  }
  return out;
}

SuperOperator affine_to_superoperator(const AffineBlochMap& map) {
  // Lambda[x_I I + x.sigma] = x_I (I + c.sigma) + (M x).sigma.
  auto image = [&](Complex x_i, const std::array<Complex, 3>& x) {
    std::array<Complex, 3> y{};
    for (int i = 0; i < 3; ++i) {
      y[i] = x_i * map.c[i];
      for (int j = 0; j < 3; ++j) y[i] += map.m[i][j] * x[j];
    }
    return pauli_operator(x_i, y);
  };
  const Complex half_i(0.0, 0.5);
  const std::array<ComplexMatrix, 4> images{
      image(0.5, {0.0, 0.0, 0.5}),     // |0><0|
      image(0.0, {0.5, half_i, 0.0}),  // |0><1|
      image(0.0, {0.5, -half_i, 0.0}), // |1><0|
      image(0.5, {0.0, 0.0, -0.5}),    // |1><1|
  };
  SuperOperator out;
  for (std::size_t col = 0; col < 4; ++col)
    for (std::size_t row = 0; row < 4; ++row) out.matrix(row, col) = images[col](row / 2, row % 2);
  return out;
}

PhaseCovariantEntries extract_phase_covariant(const SuperOperator& sop, double tol) {
  const auto& s = sop.matrix;
  PhaseCovariantEntries out;
  out.a = s(0, 0).real();
  out.b = s(0, 3).real();
  out.c = s(1, 1);
  out.d = s(1, 2);
  double residual = std::max(std::abs(s(0, 0).imag()), std::abs(s(0, 3).imag()));
  constexpr std::array<std::array<std::size_t, 2>, 8> kZeros{
      {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
  for (const auto& [r, c] : kZeros) residual = std::max(residual, std::abs(s(r, c)));
  out.off_pattern_residual = residual;
  out.pattern_ok = residual <= tol;
  return out;
}

ChoiMatrix choi(const SuperOperator& sop) {
  ChoiMatrix out;
  // J(2i + k, 2j + l) = Lambda[|i><j|](k, l).
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out.j(2 * i + k, 2 * j + l) = sop.matrix(2 * k + l, 2 * i + j);
  return out;
}

void write_map_family_jsonl(std::ostream& out, std::span<const AffineBlochMap> maps,
                            std::size_t first_index) {
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const auto& map = maps[k];
    const auto entries = extract_phase_covariant(affine_to_superoperator(map));
    nlohmann::ordered_json rec;
    rec["n"] = first_index + k;
    auto m = nlohmann::json::array();
    for (const auto& row : map.m)
      for (double x : row) m.push_back(x);
    rec["M"] = m;
    rec["c"] = map.c;
    rec["a"] = entries.a;
    rec["b"] = entries.b;
    rec["c_re"] = entries.c.real();
    rec["c_im"] = entries.c.imag();
    rec["d_re"] = entries.d.real();
    rec["d_im"] = entries.d.imag();
    rec["residual"] = entries.off_pattern_residual;
    out << rec.dump() << '\n';
  }
}

}  // namespace kdq
