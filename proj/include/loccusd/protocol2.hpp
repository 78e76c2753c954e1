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

#include "loccusd/povm.hpp"

namespace loccusd {

// Which party performs the two-outcome projective measurement; the other
// party carries the three-outcome measurement that absorbs all failures.
enum class ProjectiveRole { kAlice, kBob };

// Two-party discrimination of psi0 = cos(theta0)|00> + sin(theta0)|11> and
// psi1 = cos(theta0)|00> - sin(theta0)|11>, by one-way local measurements.
//
// theta0 in (0, pi/4]. z0 is the ratio parameter steering the projective
// party's basis r_{0,1} = (|0> +- z0|1>)/sqrt(1+|z0|^2); |z0| in (0, 1],
// |z0| = 1 gives the failure-optimal protocol.
struct ProtocolSpec {
  double theta0 = 0.0;
  cx z0{1.0, 0.0};
  ProjectiveRole projective = ProjectiveRole::kAlice;
};

// Joint outcome -> state index. Equal conclusive labels identify state 1,
// unequal ones state 0; any failure makes the round inconclusive.
int decode_pair(int label_a, int label_b);

struct TrialRecord {
  int sent = 0;
  int alice_label = kFail;  // party 0
  int bob_label = kFail;    // party 1
  int decoded = kFail;
};

struct TwoPartyProtocol {
  ProtocolSpec spec;
  Ket psi0, psi1;
  PovmSet alice;  // party 0's measurement
  PovmSet bob;    // party 1's measurement

  const Ket& state(int index) const { return index == 0 ? psi0 : psi1; }
};

// Validates the spec and assembles states + both POVMs.
// Throws std::domain_error for theta0 or z0 outside the supported ranges.
TwoPartyProtocol build_two_party_protocol(const ProtocolSpec& spec);

// Average probability that at least one party fails, evaluated numerically
// from the built operators (equals cos(2*theta0) at |z0| = 1).
double failure_probability(const ProtocolSpec& spec);

// The three-outcome party's possible post-measurement states given the
// projective party's label: (state if psi0 was sent, state if psi1 was sent).
std::pair<Ket, Ket> collapsed_bob_states(const ProtocolSpec& spec, int projective_label);

// Measures an arbitrary normalized two-qubit state with the protocol's two
// measurements: party 0 first, then party 1 on the collapsed state. One
// uniform draw per measurement. rec.sent is left at 0 for the caller.
TrialRecord measure_joint_state(const TwoPartyProtocol& protocol, const Ket& state,
                                RngStream& rng);

// Reference trial: measure_joint_state on the sent protocol state.
TrialRecord run_two_party_trial(const TwoPartyProtocol& protocol, int sent, RngStream& rng);
TrialRecord run_two_party_trial(const ProtocolSpec& spec, int sent, RngStream& rng);

// Branch probabilities precomputed along the reference code path, so the fast
// kernel consumes randomness identically to run_two_party_trial and produces
// the same records for the same stream.
struct TwoPartyTables {
  std::array<int, 3> alice_labels{};   // element order of the party-0 set
  std::array<int, 3> bob_labels{};     // element order of the party-1 set
  int n_alice = 0;
  int n_bob = 0;
  // p_alice[sent][i]: probability of party-0 element i.
  std::array<std::array<double, 3>, 2> p_alice{};
  // p_bob[sent][i][j]: probability of party-1 element j after party-0 element i.
  std::array<std::array<std::array<double, 3>, 3>, 2> p_bob{};
};

TwoPartyTables make_two_party_tables(const TwoPartyProtocol& protocol);
TrialRecord run_two_party_trial_fast(const TwoPartyTables& tables, int sent, RngStream& rng);

}  // namespace loccusd
