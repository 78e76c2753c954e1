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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "loccusd/povm.hpp"
#include "loccusd/protocol2.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using loccusd::CMatrix;
using loccusd::cx;
using loccusd::Ket;
using loccusd::kFail;
using loccusd::KrausOperator;
using loccusd::PovmSet;
using loccusd::RngStream;

namespace {

PovmSet projective_pair() {
  PovmSet set;
  CMatrix p0(2, 2), p1(2, 2);
  p0.at(0, 0) = 1.0;
  p1.at(1, 1) = 1.0;
  set.elements.push_back({0, p0});
  set.elements.push_back({1, p1});
  return set;
}

}  // namespace

TEST_SUITE("povm") {

TEST_CASE("validate accepts complete sets and reports incomplete ones") {
  const PovmSet good = projective_pair();
  const auto ok = validate(good);
  CHECK(ok.pass);
  CHECK(ok.completeness_residual <= 1e-15);
  CHECK(ok.min_effect_eigenvalue >= -1e-15);

  PovmSet missing = good;
  missing.elements.pop_back();
  const auto bad = validate(missing);
  CHECK(!bad.pass);
  CHECK(bad.completeness_residual >= 0.99);
}

TEST_CASE("find locates elements by label") {
  const PovmSet set = projective_pair();
  REQUIRE(set.find(1) != nullptr);
  CHECK(set.find(1)->label == 1);
  CHECK(set.find(kFail) == nullptr);
  CHECK(set.dim() == 2);
}

TEST_CASE("outcome_probs on the protocol measurement") {
  const loccusd::ProtocolSpec spec{oracles::kPiEighth, cx{1.0, 0.0},
                                   loccusd::ProjectiveRole::kAlice};
  const auto protocol = build_two_party_protocol(spec);

  // The projective party sees a fair coin on either state.
  for (const Ket* psi : {&protocol.psi0, &protocol.psi1}) {
    double total = 0.0;
    for (const auto& [label, p] : outcome_probs(protocol.alice, *psi, 0)) {
      CHECK(std::abs(p - 0.5) <= 1e-14);
      total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-14);
  }

  // Party index selects the measured subsystem.
  const auto probs1 = outcome_probs(protocol.alice, protocol.psi0, 1);
  double total = 0.0;
  for (const auto& [label, p] : probs1) total += p;
  CHECK(std::abs(total - 1.0) <= 1e-14);
}

TEST_CASE("pick_cumulative walks, skips zeros, and rounds the tail inward") {
  const double probs[] = {0.0, 0.3, 0.0, 0.7};
  CHECK(loccusd::pick_cumulative(probs, 4, 0.0) == 1);
  CHECK(loccusd::pick_cumulative(probs, 4, 0.2999) == 1);
  CHECK(loccusd::pick_cumulative(probs, 4, 0.3) == 3);
  CHECK(loccusd::pick_cumulative(probs, 4, 0.9999999) == 3);
  // Rounding shortfall: u beyond the accumulated mass lands on the last
  // positive entry, never on a zero one.
  const double shy[] = {0.5, 0.4999999999, 0.0};
  CHECK(loccusd::pick_cumulative(shy, 3, 0.99999999999) == 1);
  const double zeros[] = {0.0, 0.0};
  CHECK(loccusd::pick_cumulative(zeros, 2, 0.5) == -1);
  const double negative[] = {-1.0, 1.0};
  CHECK(loccusd::pick_cumulative(negative, 2, 0.1) == 1);
}

TEST_CASE("sample collapses, normalizes, and never emits zero-probability outcomes") {
  PovmSet set = projective_pair();
  // Append an exactly-zero element; it must never fire.
  set.elements.push_back({7, CMatrix(2, 2)});

  RngStream rng(9, 0);
  const Ket plus = Ket::qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  int seen[2] = {0, 0};
  for (int t = 0; t < 2000; ++t) {
    const auto out = sample(set, plus, 0, rng);
    REQUIRE((out.label == 0 || out.label == 1));
    ++seen[out.label];
    CHECK(std::abs(out.prob - 0.5) <= 1e-14);
    CHECK(out.post_state.is_normalized(1e-12));
    // Collapse of a projective element is the basis state itself.
    const Ket target = out.label == 0 ? Ket::qubit(1.0, 0.0) : Ket::qubit(0.0, 1.0);
    CHECK(testutil::max_abs_diff(out.post_state, target) <= 1e-12);
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
}

TEST_CASE("sample consumes exactly one uniform draw") {
  const PovmSet set = projective_pair();
  const Ket plus = Ket::qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  RngStream a(31, 4);
  RngStream b(31, 4);

  // Replay by hand: one uniform, one cumulative walk.
  const double u = b.uniform();
  const auto probs = outcome_probs(set, plus, 0);
  std::vector<double> p;
  for (const auto& [label, prob] : probs) p.push_back(prob);
  const int expect = loccusd::pick_cumulative(p.data(), static_cast<int>(p.size()), u);

  const auto out = sample(set, plus, 0, a);
  CHECK(out.label == probs[static_cast<size_t>(expect)].first);
  // Both streams advanced identically, so their next values agree.
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("kraus effect is the adjoint square") {
  RngStream rng(33, 0);
  CMatrix op(2, 2);
  for (auto& e : op.entries) e = cx(rng.gaussian(), rng.gaussian());
  const KrausOperator k{3, op};
  const CMatrix effect = k.effect();
  CHECK(effect.is_hermitian(1e-12));
  CHECK(loccusd::is_psd(effect, 1e-12));
  CHECK((effect - op.adjoint() * op).max_abs() == 0.0);
}

}  // TEST_SUITE
