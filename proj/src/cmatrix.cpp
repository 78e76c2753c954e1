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

#include "loccusd/cmatrix.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loccusd {

namespace {

using EMatrix =
    Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const CMatrix& m) {
  return Eigen::Map<const EMatrix>(m.entries.data(), m.rows, m.cols);
}

CMatrix from_eigen(const EMatrix& e) {
  CMatrix out(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  Eigen::Map<EMatrix>(out.entries.data(), e.rows(), e.cols()) = e;
  return out;
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows != m.cols) throw std::invalid_argument(std::string(what) + ": matrix not square");
}

}  // namespace

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::outer(const std::vector<cx>& u, const std::vector<cx>& v) {
  CMatrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = u[i] * std::conj(v[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(j, i) = std::conj(at(i, j));
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (cols != rhs.rows) throw std::invalid_argument("CMatrix multiply: dimension mismatch");
  CMatrix m(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const cx a = at(i, k);
      if (a == cx{}) continue;
      for (int j = 0; j < rhs.cols; ++j) m.at(i, j) += a * rhs.at(k, j);
    }
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  if (rows != rhs.rows || cols != rhs.cols)
    throw std::invalid_argument("CMatrix add: dimension mismatch");
  CMatrix m = *this;
  for (size_t i = 0; i < entries.size(); ++i) m.entries[i] += rhs.entries[i];
  return m;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  if (rows != rhs.rows || cols != rhs.cols)
    throw std::invalid_argument("CMatrix subtract: dimension mismatch");
  CMatrix m = *this;
  for (size_t i = 0; i < entries.size(); ++i) m.entries[i] -= rhs.entries[i];
  return m;
}

CMatrix CMatrix::scaled(cx factor) const {
  CMatrix m = *this;
  for (auto& e : m.entries) e *= factor;
  return m;
}

CMatrix CMatrix::kron(const CMatrix& rhs) const {
  CMatrix m(rows * rhs.rows, cols * rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const cx a = at(i, j);
      if (a == cx{}) continue;
      for (int p = 0; p < rhs.rows; ++p)
        for (int q = 0; q < rhs.cols; ++q)
          m.at(i * rhs.rows + p, j * rhs.cols + q) = a * rhs.at(p, q);
    }
  return m;
}

double CMatrix::max_abs() const {
  double v = 0.0;
  for (const auto& e : entries) v = std::max(v, std::abs(e));
  return v;
}

double CMatrix::frobenius_norm() const {
  double v = 0.0;
  for (const auto& e : entries) v += std::norm(e);
  return std::sqrt(v);
}

bool CMatrix::is_hermitian(double tol) const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < cols; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  if (!m.is_hermitian()) throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<EMatrix> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  std::vector<double> out(m.rows);
  for (int i = 0; i < m.rows; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

bool is_psd_2x2_trace_det(const CMatrix& m, double tol) {
  if (m.rows != 2 || m.cols != 2) throw std::invalid_argument("is_psd_2x2_trace_det: not 2x2");
  if (!m.is_hermitian()) throw std::invalid_argument("is_psd_2x2_trace_det: input not Hermitian");
  const double tr = m.at(0, 0).real() + m.at(1, 1).real();
  const double det = m.at(0, 0).real() * m.at(1, 1).real() - std::norm(m.at(0, 1));
  return tr >= -tol && det >= -tol * tol;
}

bool is_psd(const CMatrix& m, double tol) {
  require_square(m, "is_psd");
  if (!m.is_hermitian()) throw std::invalid_argument("is_psd: input not Hermitian");
  if (m.rows == 2) return is_psd_2x2_trace_det(m, tol);
  const auto eigs = hermitian_eigenvalues(m);
  return eigs.empty() || eigs.front() >= -tol;
}

CMatrix psd_part(const CMatrix& m) {
  require_square(m, "psd_part");
  if (!m.is_hermitian()) throw std::invalid_argument("psd_part: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<EMatrix> solver(to_eigen(m));
  EMatrix clipped = EMatrix::Zero(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 0.0) clipped += lambda * solver.eigenvectors().col(i) *
                                 solver.eigenvectors().col(i).adjoint();
  }
  return from_eigen(clipped);
}

CMatrix hermitian_sqrt(const CMatrix& m) {
  require_square(m, "hermitian_sqrt");
  if (!m.is_hermitian()) throw std::invalid_argument("hermitian_sqrt: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<EMatrix> solver(to_eigen(m));
  EMatrix root = EMatrix::Zero(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 0.0) root += std::sqrt(lambda) * solver.eigenvectors().col(i) *
                              solver.eigenvectors().col(i).adjoint();
  }
  return from_eigen(root);
}

SvdResult svd(const CMatrix& m) {
  Eigen::JacobiSVD<EMatrix> solver(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out;
  out.u = from_eigen(solver.matrixU());
  out.v = from_eigen(solver.matrixV());
  out.singular_values.resize(solver.singularValues().size());
  for (int i = 0; i < solver.singularValues().size(); ++i)
    out.singular_values[i] = solver.singularValues()[i];
  return out;
}

}  // namespace loccusd
