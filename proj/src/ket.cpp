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

#include "loccusd/ket.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loccusd {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("Ket: local dimension must be >= 2");
    p *= d;
  }
  return p;
}

void require_party(const Ket& psi, int party) {
  if (party < 0 || party >= psi.n_parties())
    throw std::invalid_argument("party index out of range");
}

}  // namespace

Ket::Ket(std::vector<int> d, std::vector<cx> a) : dims(std::move(d)), amps(std::move(a)) {
  if (static_cast<int>(amps.size()) != product(dims))
    throw std::invalid_argument("Ket: amplitude count does not match dims");
}

Ket Ket::qubit(cx a0, cx a1) { return Ket({2}, {a0, a1}); }

Ket Ket::qutrit(cx a0, cx a1, cx a2) { return Ket({3}, {a0, a1, a2}); }

Ket Ket::basis(const std::vector<int>& dims, const std::vector<int>& indices) {
  if (dims.size() != indices.size())
    throw std::invalid_argument("Ket::basis: dims/indices length mismatch");
  Ket psi;
  psi.dims = dims;
  psi.amps.assign(product(dims), cx{});
  size_t flat = 0;
  for (size_t p = 0; p < dims.size(); ++p) {
    if (indices[p] < 0 || indices[p] >= dims[p])
      throw std::invalid_argument("Ket::basis: index out of range");
    flat = flat * dims[p] + indices[p];
  }
  psi.amps[flat] = 1.0;
  return psi;
}

int Ket::total_dim() const { return static_cast<int>(amps.size()); }

double Ket::norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

bool Ket::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw std::domain_error("Ket::normalized: zero vector");
  Ket out = *this;
  for (auto& a : out.amps) a /= n;
  return out;
}

cx inner(const Ket& a, const Ket& b) {
  if (a.dims != b.dims) throw std::invalid_argument("inner: dimension mismatch");
  cx s{};
  for (size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
  return s;
}

Ket tensor(const Ket& a, const Ket& b) {
  Ket out;
  out.dims = a.dims;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  out.amps.resize(a.amps.size() * b.amps.size());
  size_t k = 0;
  for (const auto& x : a.amps)
    for (const auto& y : b.amps) out.amps[k++] = x * y;
  return out;
}

Ket apply_local(const CMatrix& op, const Ket& psi, int party) {
  require_party(psi, party);
  const int d = psi.dims[party];
  if (op.rows != d || op.cols != d)
    throw std::invalid_argument("apply_local: operator does not match local dimension");

  int stride = 1;
  for (int q = party + 1; q < psi.n_parties(); ++q) stride *= psi.dims[q];
  const int outer = psi.total_dim() / (d * stride);

  Ket out = psi;
  std::vector<cx> column(d);
  for (int o = 0; o < outer; ++o) {
    for (int s = 0; s < stride; ++s) {
      const size_t base = static_cast<size_t>(o) * d * stride + s;
      for (int k = 0; k < d; ++k) column[k] = psi.amps[base + static_cast<size_t>(k) * stride];
      for (int i = 0; i < d; ++i) {
        cx acc{};
        for (int k = 0; k < d; ++k) acc += op.at(i, k) * column[k];
        out.amps[base + static_cast<size_t>(i) * stride] = acc;
      }
    }
  }
  return out;
}

Ket contract_party(const Ket& psi, int party, const Ket& bra) {
  require_party(psi, party);
  if (bra.n_parties() != 1 || bra.dims[0] != psi.dims[party])
    throw std::invalid_argument("contract_party: bra does not match local dimension");
  const int d = psi.dims[party];

  int stride = 1;
  for (int q = party + 1; q < psi.n_parties(); ++q) stride *= psi.dims[q];
  const int outer = psi.total_dim() / (d * stride);

  Ket out;
  out.dims = psi.dims;
  out.dims.erase(out.dims.begin() + party);
  if (out.dims.empty())
    throw std::invalid_argument("contract_party: cannot remove the last party");
  out.amps.assign(static_cast<size_t>(outer) * stride, cx{});

  for (int o = 0; o < outer; ++o)
    for (int s = 0; s < stride; ++s) {
      cx acc{};
      for (int k = 0; k < d; ++k)
        acc += std::conj(bra.amps[k]) *
               psi.amps[static_cast<size_t>(o) * d * stride + static_cast<size_t>(k) * stride + s];
      out.amps[static_cast<size_t>(o) * stride + s] = acc;
    }
  return out;
}

double phase_free_distance(const Ket& a, const Ket& b) {
  if (a.dims != b.dims) throw std::invalid_argument("phase_free_distance: dimension mismatch");
  const cx overlap = inner(b, a);
  cx phase = 1.0;
  if (std::abs(overlap) > 1e-300) phase = overlap / std::abs(overlap);
  double dist = 0.0;
  for (size_t i = 0; i < a.amps.size(); ++i)
    dist = std::max(dist, std::abs(a.amps[i] - phase * b.amps[i]));
  return dist;
}

SchmidtForm schmidt_decompose(const Ket& psi) {
  if (psi.n_parties() != 2)
    throw std::invalid_argument("schmidt_decompose: expects a bipartite ket");
  const int da = psi.dims[0];
  const int db = psi.dims[1];

  CMatrix m(da, db);
  m.entries = psi.amps;
  const SvdResult f = svd(m);

  const int r = std::min(da, db);
  SchmidtForm out;
  out.coeffs.assign(f.singular_values.begin(), f.singular_values.begin() + r);
  for (int l = 0; l < r; ++l) {
    Ket ua;
    ua.dims = {da};
    ua.amps.resize(da);
    for (int i = 0; i < da; ++i) ua.amps[i] = f.u.at(i, l);
    out.basis_a.push_back(std::move(ua));

    // amps(i,j) = sum_l s_l U(i,l) conj(V(j,l)), so the B-side vectors are the
    // conjugated columns of V.
    Ket vb;
    vb.dims = {db};
    vb.amps.resize(db);
    for (int j = 0; j < db; ++j) vb.amps[j] = std::conj(f.v.at(j, l));
    out.basis_b.push_back(std::move(vb));
  }
  return out;
}

double min_error_prob(const Ket& psi0, const Ket& psi1) {
  const double overlap = std::abs(inner(psi0, psi1));
  const double clipped = std::min(overlap, 1.0);
  return 0.5 * (1.0 - std::sqrt(1.0 - clipped * clipped));
}

double idp_success_prob(const Ket& psi0, const Ket& psi1) {
  return 1.0 - std::min(std::abs(inner(psi0, psi1)), 1.0);
}

}  // namespace loccusd
