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

#include <vector>

#include "loccusd/cmatrix.hpp"

namespace loccusd {

// Pure state over a tensor product of small local spaces. amps is indexed in
// row-major party order: amps[i0*d1*d2*... + i1*d2*... + ...].
struct Ket {
  std::vector<int> dims;
  std::vector<cx> amps;

  Ket() = default;
  Ket(std::vector<int> d, std::vector<cx> a);

  static Ket qubit(cx a0, cx a1);
  static Ket qutrit(cx a0, cx a1, cx a2);
  static Ket basis(const std::vector<int>& dims, const std::vector<int>& indices);

  int total_dim() const;
  int n_parties() const { return static_cast<int>(dims.size()); }
  double norm() const;
  bool is_normalized(double tol = kTolAlgebra) const;
  Ket normalized() const;  // throws std::domain_error on (near) zero vectors
};

// <a|b>; conjugate-linear in the first argument. Throws on dimension mismatch.
cx inner(const Ket& a, const Ket& b);

// |u><v| over the flattened amplitude vectors.
inline CMatrix outer(const Ket& u, const Ket& v) { return CMatrix::outer(u.amps, v.amps); }

// Same amplitudes viewed as a single system of dimension prod(dims).
inline Ket flattened(const Ket& psi) { return Ket({psi.total_dim()}, psi.amps); }

Ket tensor(const Ket& a, const Ket& b);

// Apply a d x d operator to one party, identity elsewhere.
Ket apply_local(const CMatrix& op, const Ket& psi, int party);

// <bra|_party applied to psi: removes that party. bra must be a single-party
// ket of matching local dimension. Result is generally unnormalized.
Ket contract_party(const Ket& psi, int party, const Ket& bra);

// min over unit phases phi of max_i |a_i - phi*b_i|. Equality up to a global
// phase is phase_free_distance <= tol.
double phase_free_distance(const Ket& a, const Ket& b);

// Bipartite (two-party) Schmidt decomposition: psi = sum_l coeffs[l] *
// basis_a[l] (x) basis_b[l], coeffs nonnegative and sorted descending,
// each basis orthonormal. Length = min(dims[0], dims[1]).
struct SchmidtForm {
  std::vector<double> coeffs;
  std::vector<Ket> basis_a;
  std::vector<Ket> basis_b;
};
SchmidtForm schmidt_decompose(const Ket& psi);

// Helstrom bound for equal priors: (1 - sqrt(1 - |<psi0|psi1>|^2)) / 2.
double min_error_prob(const Ket& psi0, const Ket& psi1);

// Optimal unambiguous-discrimination success for equal priors:
// 1 - |<psi0|psi1>|.
double idp_success_prob(const Ket& psi0, const Ket& psi1);

}  // namespace loccusd
