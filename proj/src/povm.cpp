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

#include "loccusd/povm.hpp"

#include <cmath>
#include <stdexcept>

namespace loccusd {

const KrausOperator* PovmSet::find(int label) const {
  for (const auto& e : elements)
    if (e.label == label) return &e;
  return nullptr;
}

ValidationReport validate(const PovmSet& povm) {
  if (povm.elements.empty()) throw std::invalid_argument("validate: empty POVM");
  const int d = povm.dim();

  CMatrix sum(d, d);
  double min_eig = 0.0;
  for (const auto& e : povm.elements) {
    if (e.op.rows != d || e.op.cols != d)
      throw std::invalid_argument("validate: mixed element dimensions");
    const CMatrix effect = e.effect();
    sum = sum + effect;
    const auto eigs = hermitian_eigenvalues(effect);
    if (!eigs.empty()) min_eig = std::min(min_eig, eigs.front());
  }

  ValidationReport report;
  report.completeness_residual = (sum - CMatrix::identity(d)).max_abs();
  report.min_effect_eigenvalue = min_eig;
  report.pass = report.completeness_residual <= kTolDecomp &&
                report.min_effect_eigenvalue >= -kTolAlgebra;
  return report;
}

std::vector<std::pair<int, double>> outcome_probs(const PovmSet& povm, const Ket& psi,
                                                  int party) {
  if (party < 0 || party >= psi.n_parties())
    throw std::invalid_argument("outcome_probs: party index out of range");
  if (povm.dim() != psi.dims[party])
    throw std::invalid_argument("outcome_probs: POVM does not match local dimension");

  std::vector<std::pair<int, double>> probs;
  probs.reserve(povm.elements.size());
  for (const auto& e : povm.elements) {
    const Ket branch = apply_local(e.op, psi, party);
    const double n = branch.norm();
    probs.emplace_back(e.label, n * n);
  }
  return probs;
}

int pick_cumulative(const double* probs, int n, double u) {
  double acc = 0.0;
  int chosen = -1;
  int last_positive = -1;
  for (int i = 0; i < n; ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    acc += probs[i];
    if (u < acc) {
      chosen = i;
      break;
    }
  }
  return chosen >= 0 ? chosen : last_positive;
}

MeasurementOutcome sample(const PovmSet& povm, const Ket& psi, int party, RngStream& rng) {
  const auto probs = outcome_probs(povm, psi, party);
  std::vector<double> p(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) p[i] = probs[i].second;

  const int chosen = pick_cumulative(p.data(), static_cast<int>(p.size()), rng.uniform());
  if (chosen < 0) throw std::domain_error("sample: all outcome probabilities are zero");

  MeasurementOutcome out;
  out.label = probs[chosen].first;
  out.prob = probs[chosen].second;
  out.post_state = apply_local(povm.elements[chosen].op, psi, party).normalized();
  return out;
}

}  // namespace loccusd
