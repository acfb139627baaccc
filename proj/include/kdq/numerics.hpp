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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdq {

using Complex = std::complex<double>;

namespace tol {
/// Max-entry deviation accepted when a matrix is declared Hermitian.
inline constexpr double kHermitian = 1e-10;
/// Eigenvalues in [-kClip, 0) are treated as zero by entropy and PSD checks.
inline constexpr double kClip = 1e-10;
/// Off-diagonal Frobenius threshold of the Jacobi eigensolver, relative to
/// the Frobenius norm of the input.
inline constexpr double kJacobi = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;
}  // namespace tol

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a matrix that must be a density matrix is not one.
class InvalidState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense row-major complex matrix. Dimensions are always positive.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// Largest entry magnitude.
  double max_abs() const;
  double frobenius_norm() const;

  bool is_hermitian(double tol = tol::kHermitian) const;
  bool is_unit_trace(double tol) const;
  /// Hermitian and every eigenvalue >= -tol.
  bool is_psd(double tol = tol::kClip) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// Largest entry magnitude of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix i2();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduces `m` onto the subsystems listed in `keep` (any order, no duplicates).
/// The output follows the original subsystem order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

/// Cyclic complex Jacobi diagonalization. Throws NotHermitian when the input
/// deviates from Hermiticity by more than tol::kHermitian.
HermitianEigen hermitian_eig(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// exp(-i h t) through the spectral decomposition of h.
ComplexMatrix exp_hermitian_generator(const ComplexMatrix& h, double t);

double trace_norm(const ComplexMatrix& m);

/// Base-2 entropy. Eigenvalues in [-tol::kClip, 0) are clipped; anything more
/// negative raises InvalidState.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace kdq
