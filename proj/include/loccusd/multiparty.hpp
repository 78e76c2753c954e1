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

#include <array>
#include <utility>

#include "loccusd/runner.hpp"

namespace loccusd {

// N-party discrimination of the two entangled qubit states
// cos(theta0)|0...0> +- sin(theta0)|1...1>. Parties 1..N-1 measure in the
// (|0> +- |1>)/sqrt(2) basis; the last party runs unambiguous discrimination
// on the two states its qubit can collapse to.
struct MultiQubitSpec {
  int n_parties = 2;
  double theta0 = 0.0;
};

// N-party discrimination of the three entangled qutrit states
// c0|0...0> + c1 w^j |1...1> + c2 w^-j |2...2>, w = exp(2*pi*i/3), j = 0,1,2.
// Parties 1..N-1 measure in the eta basis; the last party runs the symmetric
// three-state unambiguous discrimination.
struct QutritSpec {
  int n_parties = 2;
  std::array<cx, 3> coeffs{};
};

// Projective outcome counts from parties 1..N-1 plus the final party's
// discrimination result. counts[2] stays 0 for qubit protocols.
struct PartyOutcomeTally {
  std::array<int, 3> counts{};
  int usd_result = kFail;
};

struct MultiTrialRecord {
  int sent = 0;
  PartyOutcomeTally tally;
  int decoded = kFail;
};

// Largest supported party count; full-tensor reference states stay small.
inline constexpr int kMaxParties = 12;

std::pair<Ket, Ket> build_nqubit_states(const MultiQubitSpec& spec);
std::array<Ket, 3> build_nqutrit_states(const QutritSpec& spec);

// Orthonormal basis eta_k = (|0> + w^k |1> + w^-k |2>)/sqrt(3).
std::array<Ket, 3> eta_basis();

// The single qubit the last party holds once the others have measured:
// cos(theta0)|0> + (-1)^index sin(theta0)|1>, index = (sent + n1) mod 2.
Ket collapsed_qubit_state(double theta0, int index);
// Qutrit analogue: c0|0> + c1 w^index |1> + c2 w^-index |2>,
// index = (sent + m2 - m1) mod 3.
Ket collapsed_qutrit_state(const std::array<cx, 3>& coeffs, int index);

// Optimal equal-prior unambiguous discrimination of two states of any equal
// dimension (the whole Ket is treated as one system). Labels are the
// identified state's index (0 or 1), plus a failure element unless it
// vanishes. Element k never fires on the other state, and both conclusive
// rates equal 1 - |<a|b>|.
PovmSet two_state_usd(const Ket& a, const Ket& b);

// Optimal equal-prior unambiguous discrimination of the three symmetric
// qutrit states built from coeffs. Reciprocal-state construction: element k
// is the maximal multiple of the projector onto the reciprocal of state k
// that keeps the failure element positive. Labels are identified indices.
PovmSet build_qutrit_usd(const std::array<cx, 3>& coeffs);

// Average failure probabilities evaluated from the built sets.
double nqubit_failure_probability(const MultiQubitSpec& spec);
double nqutrit_failure_probability(const QutritSpec& spec);

// Reference trials: full tensor state, parties measured in order with one
// uniform draw each, measured parties contracted out.
MultiTrialRecord run_nqubit_trial(const MultiQubitSpec& spec, int sent, RngStream& rng);
MultiTrialRecord run_nqutrit_trial(const QutritSpec& spec, int sent, RngStream& rng);

// Branch tables for the kernel trials. Intermediate outcomes are exactly
// uniform for these state families, so only the final-party probabilities
// depend on the spec; p_usd[i] is indexed by the collapsed-state index.
struct MultiQubitTables {
  int n_parties = 0;
  int n_usd = 0;
  std::array<int, 3> usd_labels{};
  std::array<std::array<double, 3>, 2> p_usd{};
};
struct QutritTables {
  int n_parties = 0;
  int n_usd = 0;
  std::array<int, 4> usd_labels{};
  std::array<std::array<double, 4>, 3> p_usd{};
};

MultiQubitTables make_nqubit_tables(const MultiQubitSpec& spec);
QutritTables make_nqutrit_tables(const QutritSpec& spec);
MultiTrialRecord run_nqubit_trial_fast(const MultiQubitTables& tables, int sent, RngStream& rng);
MultiTrialRecord run_nqutrit_trial_fast(const QutritTables& tables, int sent, RngStream& rng);

// Batches; n_states is forced to 2 / 3 respectively.
BatchStats run_nqubit_batch(const MultiQubitSpec& spec, const BatchOptions& options);
BatchStats run_nqutrit_batch(const QutritSpec& spec, const BatchOptions& options);

}  // namespace loccusd
