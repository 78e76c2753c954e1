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

#include "loccusd/qss.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "loccusd/multiparty.hpp"

namespace loccusd {
namespace {

// Everything a round needs, built once per session. Round r uses the stream
// (seed, r); stream (seed, n_rounds) is reserved for check-round selection
// and block guessing, so no round shares it.
struct SessionContext {
  SessionConfig cfg;
  // Index = which party is projective (0 = Alice, 1 = Bob).
  std::array<TwoPartyProtocol, 2> protocols;
  PovmSet joint_usd;  // optimal discrimination of the intercepted pair
  // collapsed[a][k]: the three-outcome party's state after projective label a
  // when state k was sent; same for either role assignment by symmetry.
  std::array<std::array<Ket, 2>, 2> collapsed;

  const PovmSet& three_outcome_set(int projective_party) const {
    return projective_party == 0 ? protocols[0].bob : protocols[1].alice;
  }
};

SessionContext make_context(const SessionConfig& cfg) {
  if (cfg.check_fraction <= 0.0 || cfg.check_fraction >= 1.0)
    throw std::domain_error("SessionConfig: check_fraction must lie in (0, 1)");
  if (cfg.block_size < 1) throw std::domain_error("SessionConfig: block_size must be >= 1");
  if (cfg.cheat_forward.total_dim() != 2 || !cfg.cheat_forward.is_normalized())
    throw std::domain_error("SessionConfig: cheat_forward must be a normalized qubit");

  SessionContext ctx;
  ctx.cfg = cfg;
  ctx.protocols[0] = build_two_party_protocol({cfg.theta0, cx{1.0, 0.0}, ProjectiveRole::kAlice});
  ctx.protocols[1] = build_two_party_protocol({cfg.theta0, cx{1.0, 0.0}, ProjectiveRole::kBob});
  ctx.joint_usd = two_state_usd(flattened(ctx.protocols[0].psi0), flattened(ctx.protocols[0].psi1));
  for (int a = 0; a < 2; ++a) {
    auto pair = collapsed_bob_states({cfg.theta0, cx{1.0, 0.0}, ProjectiveRole::kAlice}, a);
    ctx.collapsed[static_cast<size_t>(a)] = {std::move(pair.first), std::move(pair.second)};
  }
  return ctx;
}

struct RoundRecord {
  int8_t sent = 0;
  int8_t decoded = kFail;   // kFail marks a discarded round
  int8_t adv_branch = -1;   // -1 no adversary action, 0 USD failed, 1 succeeded
  bool cheater_knows = false;
};

// The intercepted pair identified (or not) and what travels on. Kept in sync
// with the public eve_intercept op through this shared helper.
EveRecord intercept(const SessionContext& ctx, int sent, RngStream& rng) {
  EveRecord record;
  const Ket flat = flattened(ctx.protocols[0].state(sent));
  record.identified = sample(ctx.joint_usd, flat, 0, rng).label;
  if (record.identified != kFail) {
    record.forwarded = ctx.protocols[0].state(record.identified);
  } else if (ctx.cfg.eve_fallback == EveFallback::kResendRandom) {
    record.forwarded = ctx.protocols[0].state(static_cast<int>(rng.bit()));
  } else {
    record.forwarded = ctx.protocols[0].psi0;
  }
  return record;
}

RoundRecord play_round(const SessionContext& ctx, uint64_t seed, uint64_t round) {
  RngStream rng(seed, round);
  RoundRecord rec;
  rec.sent = static_cast<int8_t>(rng.bit());
  const int projective = ctx.cfg.role_announcement ? static_cast<int>(rng.bit()) : 0;
  const TwoPartyProtocol& protocol = ctx.protocols[static_cast<size_t>(projective)];

  switch (ctx.cfg.adversary) {
    case Adversary::kNone: {
      rec.decoded = static_cast<int8_t>(measure_joint_state(protocol, protocol.state(rec.sent),
                                                            rng).decoded);
      return rec;
    }
    case Adversary::kEve: {
      const EveRecord eve = intercept(ctx, rec.sent, rng);
      rec.adv_branch = eve.identified == kFail ? 0 : 1;
      rec.decoded = static_cast<int8_t>(measure_joint_state(protocol, eve.forwarded, rng).decoded);
      return rec;
    }
    case Adversary::kCheatingAlice:
    case Adversary::kCheatingBob: {
      const int cheater = ctx.cfg.adversary == Adversary::kCheatingAlice ? 0 : 1;
      const bool cheater_projective = projective == cheater;
      const Ket flat = flattened(protocol.state(rec.sent));
      const int identified = sample(ctx.joint_usd, flat, 0, rng).label;
      rec.adv_branch = identified == kFail ? 0 : 1;

      if (identified != kFail) {
        rec.cheater_knows = true;
        if (!cheater_projective) {
          // The three-outcome role can always report labels consistent with
          // the identified state; the round is kept and decodes correctly.
          rec.decoded = static_cast<int8_t>(identified);
          return rec;
        }
        // Projective role: announce a label with the honest uniform marginal
        // and forward the matching conditional state; the honest party then
        // either fails (discard) or completes the consistent pair.
        const int announced = static_cast<int>(rng.bit());
        const Ket& forwarded =
            ctx.collapsed[static_cast<size_t>(announced)][static_cast<size_t>(identified)];
        const MeasurementOutcome m =
            sample(ctx.three_outcome_set(projective), forwarded, 0, rng);
        rec.decoded = static_cast<int8_t>(
            m.label == kFail ? kFail : decode_pair(announced, m.label));
        return rec;
      }

      if (!cheater_projective) {
        rec.decoded = kFail;  // claimed failure, indistinguishable from an honest one
        return rec;
      }
      // Fabrication: no failure outcome is available to the projective role,
      // so the cheater forwards a fixed qubit and announces a random label.
      const MeasurementOutcome m =
          sample(ctx.three_outcome_set(projective), ctx.cfg.cheat_forward, 0, rng);
      if (m.label == kFail) {
        rec.decoded = kFail;
      } else {
        const int announced = static_cast<int>(rng.bit());
        rec.decoded = static_cast<int8_t>(decode_pair(announced, m.label));
      }
      return rec;
    }
  }
  return rec;
}

}  // namespace

std::vector<int> parity_block_key(const std::vector<int>& bits, int block_size) {
  if (block_size < 1) throw std::domain_error("parity_block_key: block_size must be >= 1");
  std::vector<int> key;
  const size_t blocks = bits.size() / static_cast<size_t>(block_size);
  key.reserve(blocks);
  for (size_t b = 0; b < blocks; ++b) {
    int parity = 0;
    for (size_t i = 0; i < static_cast<size_t>(block_size); ++i)
      parity ^= bits[b * static_cast<size_t>(block_size) + i];
    key.push_back(parity);
  }
  return key;
}

std::pair<SessionResult, SessionDiagnostics> run_session_detailed(const SessionConfig& cfg,
                                                                  uint64_t seed) {
  const SessionContext ctx = make_context(cfg);
  const auto n = static_cast<int64_t>(cfg.n_rounds);
  std::vector<RoundRecord> rounds(static_cast<size_t>(n));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int64_t r = 0; r < n; ++r)
    rounds[static_cast<size_t>(r)] = play_round(ctx, seed, static_cast<uint64_t>(r));

  SessionResult result;
  SessionDiagnostics diag;
  diag.n_rounds = cfg.n_rounds;

  std::vector<int8_t> sifted_bits;
  std::vector<int8_t> sifted_sent;
  for (const RoundRecord& rec : rounds) {
    if (rec.adv_branch == 1) ++diag.adversary_usd_success;
    if (rec.adv_branch == 0) ++diag.adversary_usd_failure;
    if (rec.decoded == kFail) {
      ++diag.discarded_rounds;
      continue;
    }
    sifted_bits.push_back(rec.decoded);
    sifted_sent.push_back(rec.sent);
  }
  result.sifted_rounds = sifted_bits.size();

  // Seeded sampling without replacement: partial shuffle, first n_check win.
  const auto sifted = static_cast<uint64_t>(sifted_bits.size());
  const auto n_check = static_cast<uint64_t>(cfg.check_fraction * static_cast<double>(sifted));
  RngStream check_rng(seed, cfg.n_rounds);
  std::vector<uint32_t> order(sifted_bits.size());
  std::iota(order.begin(), order.end(), 0u);
  std::vector<char> disclosed(sifted_bits.size(), 0);
  for (uint64_t i = 0; i < n_check; ++i) {
    const uint64_t j = i + check_rng.uniform_below(sifted - i);
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
    disclosed[order[static_cast<size_t>(i)]] = 1;
  }
  result.disclosed_check_rounds = n_check;

  std::vector<int> kept_bits;
  std::vector<int> dealer_bits;
  for (size_t i = 0; i < sifted_bits.size(); ++i) {
    if (disclosed[i]) {
      if (sifted_bits[i] != sifted_sent[i]) ++diag.check_mismatches;
    } else {
      kept_bits.push_back(sifted_bits[i]);
      dealer_bits.push_back(sifted_sent[i]);
    }
  }
  diag.kept_for_key = kept_bits.size();
  result.observed_error_rate =
      n_check == 0 ? 0.0
                   : static_cast<double>(diag.check_mismatches) / static_cast<double>(n_check);
  result.abort = diag.check_mismatches > 0;
  result.key_bits = parity_block_key(kept_bits, cfg.block_size);
  diag.dealer_key_bits = parity_block_key(dealer_bits, cfg.block_size);
  return {std::move(result), std::move(diag)};
}

SessionResult run_session(const SessionConfig& cfg, uint64_t seed) {
  return run_session_detailed(cfg, seed).first;
}

EveRecord eve_intercept(int state_index, const SessionConfig& cfg, RngStream& rng) {
  if (state_index != 0 && state_index != 1)
    throw std::domain_error("eve_intercept: state_index must be 0 or 1");
  return intercept(make_context(cfg), state_index, rng);
}

double cheating_bob_detection_rate(const SessionConfig& cfg, uint64_t seed) {
  SessionConfig bob_cfg = cfg;
  bob_cfg.adversary = Adversary::kCheatingBob;
  return run_session(bob_cfg, seed).observed_error_rate;
}

double selective_cheat_key_guess_accuracy(const SessionConfig& cfg, uint64_t seed) {
  SessionConfig local = cfg;
  local.role_announcement = true;
  local.adversary = Adversary::kNone;
  const SessionContext ctx = make_context(local);

  // Bob cheats only when holding the three-outcome role: a claimed failure is
  // then indistinguishable from an honest one, so these are the rounds where
  // he ends up knowing the bit. Honest rounds contribute bits he cannot see.
  std::vector<int8_t> bits;
  std::vector<int8_t> known;
  for (uint64_t r = 0; r < local.n_rounds; ++r) {
    RngStream rng(seed, r);
    const int sent = static_cast<int>(rng.bit());
    const int projective = static_cast<int>(rng.bit());
    if (projective == 1) {
      const TrialRecord rec =
          measure_joint_state(ctx.protocols[1], ctx.protocols[1].state(sent), rng);
      if (rec.decoded == kFail) continue;
      bits.push_back(static_cast<int8_t>(rec.decoded));
      known.push_back(0);
    } else {
      const Ket flat = flattened(ctx.protocols[0].state(sent));
      const int identified = sample(ctx.joint_usd, flat, 0, rng).label;
      if (identified == kFail) continue;  // claims failure, round discarded
      bits.push_back(static_cast<int8_t>(identified));
      known.push_back(1);
    }
  }

  RngStream guess_rng(seed, local.n_rounds);
  const size_t block = static_cast<size_t>(local.block_size);
  const size_t n_blocks = bits.size() / block;
  if (n_blocks == 0)
    throw std::domain_error("selective_cheat_key_guess_accuracy: no complete blocks");
  uint64_t correct = 0;
  for (size_t b = 0; b < n_blocks; ++b) {
    int truth = 0;
    bool all_known = true;
    for (size_t i = 0; i < block; ++i) {
      truth ^= bits[b * block + i];
      all_known = all_known && known[b * block + i];
    }
    const int guess = all_known ? truth : static_cast<int>(guess_rng.bit());
    if (guess == truth) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n_blocks);
}

double eve_error_rate_analytic(double theta0) { return std::cos(2.0 * theta0) / 2.0; }

double cheating_alice_error_rate_analytic(double theta0) {
  const double f = std::cos(2.0 * theta0);
  const double t2 = std::tan(theta0) * std::tan(theta0);
  return f * t2 / 2.0 / ((1.0 - f) * (1.0 - f) + f * t2);
}

}  // namespace loccusd
