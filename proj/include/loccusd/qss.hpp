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

#include <cstdint>
#include <utility>
#include <vector>

#include "loccusd/protocol2.hpp"

namespace loccusd {

// Secret sharing over the two-party discrimination protocol, B92-style: a
// dealer sends one of the two entangled states per round, Alice and Bob
// measure locally, failures are discarded, a disclosed subset estimates the
// error rate, and the kept bits are folded into block parities.

enum class Adversary { kNone, kEve, kCheatingAlice, kCheatingBob };

// What Eve resends when her unambiguous discrimination of the intercepted
// pair fails and she has to forward something.
enum class EveFallback { kResendRandom, kResendFixedPsi0 };

struct SessionConfig {
  double theta0 = 0.0;
  uint64_t n_rounds = 0;
  double check_fraction = 0.1;  // fraction of sifted rounds disclosed
  int block_size = 1;
  // When true the dealer announces, uniformly per round, which party makes
  // the projective measurement; when false Alice always does.
  bool role_announcement = false;
  Adversary adversary = Adversary::kNone;
  EveFallback eve_fallback = EveFallback::kResendRandom;
  // Qubit a cheating party forwards when forced to fabricate an outcome.
  Ket cheat_forward = Ket::qubit(1.0, 0.0);
};

struct SessionResult {
  uint64_t sifted_rounds = 0;           // rounds surviving the failure discard
  uint64_t disclosed_check_rounds = 0;  // sifted rounds sacrificed for checking
  double observed_error_rate = 0.0;     // mismatches / disclosed
  std::vector<int> key_bits;            // block parities of the kept rounds
  bool abort = false;                   // any disclosed mismatch is tamper evidence
};

// Bookkeeping beyond the protocol-level result, for tests and reports.
struct SessionDiagnostics {
  uint64_t n_rounds = 0;
  uint64_t discarded_rounds = 0;  // failure signal in an honest or forged round
  uint64_t kept_for_key = 0;      // sifted - disclosed
  uint64_t check_mismatches = 0;
  uint64_t adversary_usd_success = 0;
  uint64_t adversary_usd_failure = 0;
  std::vector<int> dealer_key_bits;  // parities of what was actually sent
};

SessionResult run_session(const SessionConfig& cfg, uint64_t seed);
std::pair<SessionResult, SessionDiagnostics> run_session_detailed(const SessionConfig& cfg,
                                                                  uint64_t seed);

// One interception: Eve applies the optimal joint two-state discrimination to
// the pair in transit (success probability 1 - cos(2*theta0)); on success she
// forwards the identified state, otherwise her fallback.
struct EveRecord {
  int identified = kFail;
  Ket forwarded;
};
EveRecord eve_intercept(int state_index, const SessionConfig& cfg, RngStream& rng);

// Fraction of disclosed check rounds revealing an inconsistency when Bob
// cheats; zero without role announcement, strictly positive with it.
double cheating_bob_detection_rate(const SessionConfig& cfg, uint64_t seed);

// XOR of each consecutive full block; a trailing partial block is discarded.
std::vector<int> parity_block_key(const std::vector<int>& bits, int block_size);

// Role announcement on, Bob cheating only in rounds where he holds the
// three-outcome role (where a claimed failure is undetectable) and honest
// otherwise: measures how often he can guess a key bit of cfg.block_size.
// Approaches 1/2 + 1/2 * (1/2)^block_size, hence 1/2 for large blocks.
double selective_cheat_key_guess_accuracy(const SessionConfig& cfg, uint64_t seed);

// Analytic disclosed-round error rates under equal priors, derived by
// conditioning on the protocol's outcome probabilities.
// Eve: cos(2*theta0)/2 for either fallback. Cheating Alice (no announcement,
// so she holds the projective role and must fabricate on failure):
// F*tan^2(theta0)/2 / ((1-F)^2 + F*tan^2(theta0)) with F = cos(2*theta0).
double eve_error_rate_analytic(double theta0);
double cheating_alice_error_rate_analytic(double theta0);

}  // namespace loccusd
