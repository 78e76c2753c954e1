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

#include "loccusd/protocol2.hpp"

#include <cmath>
#include <stdexcept>

namespace loccusd {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Anything smaller than this squared amplitude is treated as an absent
// failure branch, so optimal protocols come out with two-element sets.
constexpr double kBranchCutoff = 1e-15;

void check_spec(const ProtocolSpec& spec) {
  if (!(spec.theta0 > 0.0) || spec.theta0 > kPi / 4.0 + kTolAlgebra)
    throw std::domain_error("ProtocolSpec: theta0 must lie in (0, pi/4]");
  const double mag = std::abs(spec.z0);
  if (!(mag > 0.0) || mag > 1.0 + kTolAlgebra)
    throw std::domain_error("ProtocolSpec: |z0| must lie in (0, 1]");
}

// Basis of the two-outcome party: r_j = (|0> + (-1)^j z0 |1>) / sqrt(1+|z0|^2).
Ket projective_vector(const ProtocolSpec& spec, int j) {
  const double nrm = std::sqrt(1.0 + std::norm(spec.z0));
  const cx sign = (j == 0) ? cx{1.0, 0.0} : cx{-1.0, 0.0};
  return Ket::qubit(1.0 / nrm, sign * spec.z0 / nrm);
}

// Conclusive directions of the three-outcome party. s_j is orthogonal to the
// conditional state cos(theta0)|0> + (-1)^j conj(z0) sin(theta0)|1>, which is
// what that party holds when the sent state and the projective label agree
// modulo 2 with index j.
Ket conclusive_vector(const ProtocolSpec& spec, int j) {
  const double cot = std::cos(spec.theta0) / std::sin(spec.theta0);
  const double mag = std::abs(spec.z0);
  const double nrm = mag / std::sqrt(mag * mag + cot * cot);
  const cx sign = (j == 0) ? cx{-1.0, 0.0} : cx{1.0, 0.0};
  return Ket::qubit(nrm, sign * nrm * cot / spec.z0);
}

PovmSet build_projective_set(const ProtocolSpec& spec) {
  const double x = std::sqrt((1.0 + std::norm(spec.z0)) / 2.0);
  PovmSet set;
  for (int j = 0; j < 2; ++j) {
    const Ket r = projective_vector(spec, j);
    set.elements.push_back({j, outer(r, r).scaled(x)});
  }
  const double fail_sq = 1.0 - std::norm(spec.z0);
  if (fail_sq > kBranchCutoff) {
    const Ket one = Ket::qubit(0.0, 1.0);
    set.elements.push_back({kFail, outer(one, one).scaled(std::sqrt(fail_sq))});
  }
  return set;
}

PovmSet build_conclusive_set(const ProtocolSpec& spec) {
  const double tan = std::tan(spec.theta0);
  const double y = std::sqrt((1.0 + std::norm(spec.z0) * tan * tan) / 2.0);
  PovmSet set;
  for (int j = 0; j < 2; ++j) {
    const Ket s = conclusive_vector(spec, j);
    set.elements.push_back({j, outer(s, s).scaled(y)});
  }
  const double fail_sq = 1.0 - std::norm(spec.z0) * tan * tan;
  if (fail_sq > kBranchCutoff) {
    const Ket zero = Ket::qubit(1.0, 0.0);
    set.elements.push_back({kFail, outer(zero, zero).scaled(std::sqrt(fail_sq))});
  }
  return set;
}

}  // namespace

int decode_pair(int label_a, int label_b) {
  if (label_a == kFail || label_b == kFail) return kFail;
  return label_a == label_b ? 1 : 0;
}

TwoPartyProtocol build_two_party_protocol(const ProtocolSpec& spec) {
  check_spec(spec);
  const double c = std::cos(spec.theta0);
  const double s = std::sin(spec.theta0);

  TwoPartyProtocol protocol;
  protocol.spec = spec;
  protocol.psi0 = Ket({2, 2}, {c, 0.0, 0.0, s});
  protocol.psi1 = Ket({2, 2}, {c, 0.0, 0.0, -s});

  PovmSet projective = build_projective_set(spec);
  PovmSet conclusive = build_conclusive_set(spec);
  for (const PovmSet* set : {&projective, &conclusive}) {
    const ValidationReport report = validate(*set);
    if (!report.pass)
      throw std::logic_error("build_two_party_protocol: constructed set is not a POVM");
  }

  const bool alice_projective = spec.projective == ProjectiveRole::kAlice;
  protocol.alice = alice_projective ? std::move(projective) : std::move(conclusive);
  protocol.bob = alice_projective ? std::move(conclusive) : std::move(projective);
  return protocol;
}

double failure_probability(const ProtocolSpec& spec) {
  const TwoPartyProtocol protocol = build_two_party_protocol(spec);
  double success = 0.0;
  for (int sent = 0; sent < 2; ++sent) {
    const Ket& psi = protocol.state(sent);
    for (const auto& [label0, p0] : outcome_probs(protocol.alice, psi, 0)) {
      if (label0 == kFail || p0 <= 0.0) continue;
      const Ket post =
          apply_local(protocol.alice.find(label0)->op, psi, 0).normalized();
      for (const auto& [label1, p1] : outcome_probs(protocol.bob, post, 1)) {
        if (label1 == kFail) continue;
        success += 0.5 * p0 * p1;
      }
    }
  }
  return 1.0 - success;
}

std::pair<Ket, Ket> collapsed_bob_states(const ProtocolSpec& spec, int projective_label) {
  check_spec(spec);
  if (projective_label != 0 && projective_label != 1)
    throw std::domain_error("collapsed_bob_states: label must be 0 or 1");

  const TwoPartyProtocol protocol = build_two_party_protocol(spec);
  const int party = spec.projective == ProjectiveRole::kAlice ? 0 : 1;
  const PovmSet& set = party == 0 ? protocol.alice : protocol.bob;
  const Ket r = projective_vector(spec, projective_label);

  auto collapse = [&](const Ket& psi) {
    const Ket post = apply_local(set.find(projective_label)->op, psi, party);
    return contract_party(post, party, r).normalized();
  };
  return {collapse(protocol.psi0), collapse(protocol.psi1)};
}

TrialRecord measure_joint_state(const TwoPartyProtocol& protocol, const Ket& state,
                                RngStream& rng) {
  TrialRecord rec;
  const MeasurementOutcome first = sample(protocol.alice, state, 0, rng);
  rec.alice_label = first.label;
  const MeasurementOutcome second = sample(protocol.bob, first.post_state, 1, rng);
  rec.bob_label = second.label;
  rec.decoded = decode_pair(rec.alice_label, rec.bob_label);
  return rec;
}

TrialRecord run_two_party_trial(const TwoPartyProtocol& protocol, int sent, RngStream& rng) {
  if (sent != 0 && sent != 1)
    throw std::domain_error("run_two_party_trial: sent must be 0 or 1");
  TrialRecord rec = measure_joint_state(protocol, protocol.state(sent), rng);
  rec.sent = sent;
  return rec;
}

TrialRecord run_two_party_trial(const ProtocolSpec& spec, int sent, RngStream& rng) {
  return run_two_party_trial(build_two_party_protocol(spec), sent, rng);
}

TwoPartyTables make_two_party_tables(const TwoPartyProtocol& protocol) {
  TwoPartyTables tables;
  tables.n_alice = static_cast<int>(protocol.alice.elements.size());
  tables.n_bob = static_cast<int>(protocol.bob.elements.size());
  if (tables.n_alice > 3 || tables.n_bob > 3)
    throw std::invalid_argument("make_two_party_tables: more than three elements per party");
  for (int i = 0; i < tables.n_alice; ++i)
    tables.alice_labels[static_cast<size_t>(i)] = protocol.alice.elements[static_cast<size_t>(i)].label;
  for (int j = 0; j < tables.n_bob; ++j)
    tables.bob_labels[static_cast<size_t>(j)] = protocol.bob.elements[static_cast<size_t>(j)].label;

  // Replays the reference trial's arithmetic so the table entries are the
  // exact doubles the reference sampler walks over.
  for (int sent = 0; sent < 2; ++sent) {
    const Ket& psi = protocol.state(sent);
    const auto probs0 = outcome_probs(protocol.alice, psi, 0);
    for (int i = 0; i < tables.n_alice; ++i) {
      const auto si = static_cast<size_t>(i);
      tables.p_alice[static_cast<size_t>(sent)][si] = probs0[si].second;
      if (probs0[si].second <= 0.0) continue;  // branch unreachable by sampling
      const Ket post = apply_local(protocol.alice.elements[si].op, psi, 0).normalized();
      const auto probs1 = outcome_probs(protocol.bob, post, 1);
      for (int j = 0; j < tables.n_bob; ++j)
        tables.p_bob[static_cast<size_t>(sent)][si][static_cast<size_t>(j)] =
            probs1[static_cast<size_t>(j)].second;
    }
  }
  return tables;
}

TrialRecord run_two_party_trial_fast(const TwoPartyTables& tables, int sent, RngStream& rng) {
  if (sent != 0 && sent != 1)
    throw std::domain_error("run_two_party_trial_fast: sent must be 0 or 1");
  TrialRecord rec;
  rec.sent = sent;
  const auto ss = static_cast<size_t>(sent);
  const int i = pick_cumulative(tables.p_alice[ss].data(), tables.n_alice, rng.uniform());
  rec.alice_label = tables.alice_labels[static_cast<size_t>(i)];
  const int j = pick_cumulative(tables.p_bob[ss][static_cast<size_t>(i)].data(), tables.n_bob,
                                rng.uniform());
  rec.bob_label = tables.bob_labels[static_cast<size_t>(j)];
  rec.decoded = decode_pair(rec.alice_label, rec.bob_label);
  return rec;
}

}  // namespace loccusd
