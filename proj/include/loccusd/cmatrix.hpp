// Copyright 2026 The loccusd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

namespace loccusd {

using cx = std::complex<double>;

// Default tolerances: exact algebraic identities vs decompositions.
inline constexpr double kTolAlgebra = 1e-12;
inline constexpr double kTolDecomp = 1e-10;

// Dense row-major complex matrix. Dimensions stay tiny (local spaces are
// qubits/qutrits, joints a few dozen), so no blocking or views.
struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cx> entries;  // row-major, rows*cols

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {}

  static CMatrix identity(int n);
  static CMatrix outer(const std::vector<cx>& u, const std::vector<cx>& v);  // |u><v|

  cx& at(int i, int j) { return entries[static_cast<size_t>(i) * cols + j]; }
  const cx& at(int i, int j) const { return entries[static_cast<size_t>(i) * cols + j]; }

  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  CMatrix scaled(cx factor) const;
  CMatrix kron(const CMatrix& rhs) const;

  double max_abs() const;
  double frobenius_norm() const;
  bool is_hermitian(double tol = kTolAlgebra) const;
};

// Eigenvalues of a Hermitian matrix, ascending. Throws std::invalid_argument
// if the input is not Hermitian within kTolAlgebra.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

// Positive-semidefinite test: all eigenvalues >= -tol. 2x2 inputs use the
// closed-form trace/determinant criterion, larger ones the eigensolver.
bool is_psd(const CMatrix& m, double tol = kTolAlgebra);

// Trace/determinant PSD criterion for 2x2 Hermitian matrices
// (tr >= -tol and det >= -tol^2); exposed for cross-checking.
bool is_psd_2x2_trace_det(const CMatrix& m, double tol = kTolAlgebra);

// Clip negative eigenvalues to zero (Hermitian input).
CMatrix psd_part(const CMatrix& m);

// Principal square root of a Hermitian PSD matrix; eigenvalues below zero are
// clipped before taking roots, so slightly indefinite inputs are tolerated.
CMatrix hermitian_sqrt(const CMatrix& m);

// m = u * diag(singular_values) * v^dagger, with u, v unitary (full) and
// singular values sorted descending.
struct SvdResult {
  CMatrix u;
  std::vector<double> singular_values;
  CMatrix v;
};
SvdResult svd(const CMatrix& m);

}  // namespace loccusd
