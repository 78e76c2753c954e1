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

#include <utility>
#include <vector>

#include "loccusd/cmatrix.hpp"
#include "loccusd/ket.hpp"
#include "loccusd/rng.hpp"

namespace loccusd {

// Outcome label: nonnegative ints identify conclusive outcomes, kFail is the
// inconclusive ("don't know") outcome.
inline constexpr int kFail = -1;

struct KrausOperator {
  int label = 0;
  CMatrix op;  // square, local dimension

  CMatrix effect() const { return op.adjoint() * op; }
};

// One party's measurement: Kraus operators whose effects sum to the identity.
struct PovmSet {
  std::vector<KrausOperator> elements;

  int dim() const { return elements.empty() ? 0 : elements.front().op.rows; }
  const KrausOperator* find(int label) const;
};

struct ValidationReport {
  double completeness_residual = 0.0;  // max-norm of sum(effects) - I
  double min_effect_eigenvalue = 0.0;  // most negative effect eigenvalue
  bool pass = false;
};

// Completeness within kTolDecomp, every effect PSD within kTolAlgebra.
ValidationReport validate(const PovmSet& povm);

struct MeasurementOutcome {
  int label = kFail;
  double prob = 0.0;
  Ket post_state;  // normalized
};

// Probability of each outcome when `party` of psi is measured; returned in
// element order. Probabilities sum to 1 within kTolDecomp for a valid set.
std::vector<std::pair<int, double>> outcome_probs(const PovmSet& povm, const Ket& psi,
                                                  int party);

// Cumulative walk over probs given a uniform draw u in [0,1): entries <= 0 are
// skipped so they can never be produced by rounding at the boundaries, and the
// tail rounds into the last positive entry. Returns -1 if no entry is positive.
// All samplers in this library route their draws through this one walk.
int pick_cumulative(const double* probs, int n, double u);

// Draw one outcome (single uniform draw, cumulative walk in element order) and
// collapse. Outcomes with exactly zero probability are never returned.
MeasurementOutcome sample(const PovmSet& povm, const Ket& psi, int party, RngStream& rng);

}  // namespace loccusd
