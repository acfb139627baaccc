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

// Process tomography of qubit dynamical maps from four probe trajectories,
// and the representations used downstream: affine Bloch maps, 4x4
// superoperators on (rho00, rho01, rho10, rho11), and Choi matrices.

#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "kdq/engine.hpp"
#include "kdq/numerics.hpp"

namespace kdq {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// r -> m r + c on Bloch vectors.
struct AffineBlochMap {
  Mat3 m{};
  Vec3 c{};

  static AffineBlochMap identity();
  Vec3 apply(const Vec3& r) const;
};

/// this = outer o inner.
AffineBlochMap compose(const AffineBlochMap& outer, const AffineBlochMap& inner);

Vec3 bloch_vector(const ComplexMatrix& rho);
ComplexMatrix density_from_bloch(const Vec3& r);

/// Images of P0, P1, P+, PR under the map being reconstructed.
struct ProbeImages {
  ComplexMatrix p0;
  ComplexMatrix p1;
  ComplexMatrix plus;
  ComplexMatrix right;
};

AffineBlochMap reconstruct_affine(const ProbeImages& images);

/// Overload on the Bloch vectors of the evolved P0, P1, P+, PR.
AffineBlochMap reconstruct_affine(const std::array<Vec3, 4>& probe_blochs);

/// Lambda_n for n = 0..n_max from the four probe trajectories.
std::vector<AffineBlochMap> reconstruct_family(const std::array<Trajectory, 4>& probes);

/// Raised when a cumulative map cannot be inverted.
class SingularMap : public std::runtime_error {
 public:
  SingularMap(std::size_t step, double det, double cond);
  std::size_t step() const { return step_; }
  double determinant() const { return det_; }
  double condition() const { return cond_; }

 private:
  std::size_t step_;
  double det_;
  double cond_;
};

inline constexpr double kSingularDeterminant = 1e-12;
inline constexpr double kDefaultConditionThreshold = 1e8;

/// (M^-1, -M^-1 c). Condition estimate is ||M||_F ||M^-1||_F. `step` is only
/// used to label the SingularMap diagnostics.
AffineBlochMap invert_affine(const AffineBlochMap& map,
                             double cond_threshold = kDefaultConditionThreshold,
                             std::size_t step = 0);

/// Lambda_n o Lambda_{n-1}^-1.
AffineBlochMap time_local_map(const AffineBlochMap& lambda_n, const AffineBlochMap& lambda_nm1,
                              double cond_threshold = kDefaultConditionThreshold,
                              std::size_t step = 0);

/// Superoperator on vec(rho) = (rho00, rho01, rho10, rho11).
struct SuperOperator {
  ComplexMatrix matrix = ComplexMatrix(4, 4);

  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

SuperOperator affine_to_superoperator(const AffineBlochMap& map);

struct PhaseCovariantEntries {
  double a = 0.0;
  double b = 0.0;
  Complex c;
  Complex d;
  /// Largest magnitude among entries the phase covariant pattern forces to
  /// zero, plus any imaginary part of a and b.
  double off_pattern_residual = 0.0;
  bool pattern_ok = true;
};

/// Never throws: a residual above `tol` only clears `pattern_ok`.
PhaseCovariantEntries extract_phase_covariant(const SuperOperator& sop, double tol = 1e-10);

/// J = sum_ij |i><j| (x) Lambda[|i><j|]; ancilla first.
struct ChoiMatrix {
  ComplexMatrix j = ComplexMatrix(4, 4);
};

ChoiMatrix choi(const SuperOperator& sop);

/// One JSON object per line:
/// {n, M (row-major), c, a, b, c_re, c_im, d_re, d_im, residual}.
void write_map_family_jsonl(std::ostream& out, std::span<const AffineBlochMap> maps,
                            std::size_t first_index = 0);

}  // namespace kdq
