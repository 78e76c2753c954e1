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
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "loccusd/qss.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using loccusd::Adversary;
using loccusd::build_two_party_protocol;
using loccusd::cheating_alice_error_rate_analytic;
using loccusd::cheating_bob_detection_rate;
using loccusd::eve_error_rate_analytic;
using loccusd::eve_intercept;
using loccusd::EveFallback;
using loccusd::EveRecord;
using loccusd::Ket;
using loccusd::kFail;
using loccusd::parity_block_key;
using loccusd::RngStream;
using loccusd::run_session;
using loccusd::run_session_detailed;
using loccusd::selective_cheat_key_guess_accuracy;
using loccusd::SessionConfig;
using loccusd::SessionDiagnostics;
using loccusd::SessionResult;

namespace {

SessionConfig base_config(uint64_t n_rounds) {
  SessionConfig cfg;
  cfg.theta0 = oracles::kPiEighth;
  cfg.n_rounds = n_rounds;
  return cfg;
}

double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

void check_accounting(const SessionConfig& cfg, const SessionResult& res,
                      const SessionDiagnostics& diag) {
  CHECK(diag.kept_for_key + diag.discarded_rounds + res.disclosed_check_rounds ==
        cfg.n_rounds);
  CHECK(res.sifted_rounds == diag.kept_for_key + res.disclosed_check_rounds);
  CHECK(res.disclosed_check_rounds ==
        static_cast<uint64_t>(cfg.check_fraction * static_cast<double>(res.sifted_rounds)));
}

}  // namespace

TEST_SUITE("qss") {

TEST_CASE("block parity folding") {
  CHECK(parity_block_key({1, 0, 1, 1}, 2) == std::vector<int>{1, 0});
  CHECK(parity_block_key({1, 0, 1, 1}, 3) == std::vector<int>{0});
  CHECK(parity_block_key({1, 0, 1, 1}, 1) == std::vector<int>{1, 0, 1, 1});
  CHECK(parity_block_key({1, 0, 1}, 4).empty());
  CHECK(parity_block_key({}, 2).empty());
  CHECK_THROWS_AS(parity_block_key({1, 0}, 0), std::domain_error);
}

TEST_CASE("session configuration is validated up front") {
  SessionConfig cfg = base_config(10);
  cfg.check_fraction = 0.0;
  CHECK_THROWS_AS(run_session(cfg, 1), std::domain_error);
  cfg = base_config(10);
  cfg.check_fraction = 1.0;
  CHECK_THROWS_AS(run_session(cfg, 1), std::domain_error);
  cfg = base_config(10);
  cfg.block_size = 0;
  CHECK_THROWS_AS(run_session(cfg, 1), std::domain_error);
  cfg = base_config(10);
  cfg.cheat_forward = Ket::qubit(0.5, 0.5);
  CHECK_THROWS_AS(run_session(cfg, 1), std::domain_error);
  cfg = base_config(10);
  cfg.theta0 = 0.0;
  CHECK_THROWS_AS(run_session(cfg, 1), std::domain_error);
}

TEST_CASE("honest sessions never abort and agree with the dealer") {
  const SessionConfig cfg = base_config(200000);
  const auto [res, diag] = run_session_detailed(cfg, 42);
  CHECK(res.observed_error_rate == 0.0);
  CHECK(!res.abort);
  CHECK(diag.check_mismatches == 0);
  check_accounting(cfg, res, diag);
  CHECK(res.key_bits == diag.dealer_key_bits);
  CHECK(diag.adversary_usd_success == 0);
  CHECK(diag.adversary_usd_failure == 0);

  const double sifted_fraction =
      static_cast<double>(res.sifted_rounds) / static_cast<double>(cfg.n_rounds);
  const double expect = 1.0 - oracles::kFailPiEighth;
  CHECK(std::abs(sifted_fraction - expect) <=
        5.0 * binomial_sigma(expect, static_cast<double>(cfg.n_rounds)));

  // Same seed, same transcript; thread count cannot matter.
  testutil::ThreadCountGuard guard;
  const auto [res2, diag2] = run_session_detailed(cfg, 42);
  CHECK(res2.key_bits == res.key_bits);
  CHECK(res2.sifted_rounds == res.sifted_rounds);
#ifdef _OPENMP
  omp_set_num_threads(1);
  const auto [one, one_diag] = run_session_detailed(cfg, 42);
  omp_set_num_threads(4);
  const auto [four, four_diag] = run_session_detailed(cfg, 42);
  CHECK(one.key_bits == four.key_bits);
  CHECK(one.sifted_rounds == four.sifted_rounds);
  CHECK(one_diag.discarded_rounds == four_diag.discarded_rounds);
#endif
}

TEST_CASE("honest sessions with wider parity blocks still match the dealer") {
  SessionConfig cfg = base_config(20000);
  cfg.block_size = 4;
  const auto [res, diag] = run_session_detailed(cfg, 7);
  CHECK(res.key_bits == diag.dealer_key_bits);
  CHECK(res.key_bits.size() == diag.kept_for_key / 4);
  CHECK(!res.abort);
}

TEST_CASE("an intercepting eavesdropper is caught at the analytic rate") {
  for (const EveFallback fallback :
       {EveFallback::kResendRandom, EveFallback::kResendFixedPsi0}) {
    SessionConfig cfg = base_config(200000);
    cfg.adversary = Adversary::kEve;
    cfg.eve_fallback = fallback;
    const auto [res, diag] = run_session_detailed(cfg, 11);
    check_accounting(cfg, res, diag);
    CHECK(res.abort);

    const double expect = oracles::kEveErrorPiEighth;
    CHECK(std::abs(res.observed_error_rate - expect) <=
          5.0 * binomial_sigma(expect, static_cast<double>(res.disclosed_check_rounds)));

    // Her joint discrimination succeeds at the conclusive rate, and the
    // forwarded states keep the sifted fraction at the honest level.
    const double n = static_cast<double>(cfg.n_rounds);
    const double success_fraction = static_cast<double>(diag.adversary_usd_success) / n;
    const double conclusive = 1.0 - oracles::kFailPiEighth;
    CHECK(std::abs(success_fraction - conclusive) <= 5.0 * binomial_sigma(conclusive, n));
    CHECK(diag.adversary_usd_success + diag.adversary_usd_failure == cfg.n_rounds);
    const double sifted_fraction = static_cast<double>(res.sifted_rounds) / n;
    CHECK(std::abs(sifted_fraction - conclusive) <= 5.0 * binomial_sigma(conclusive, n));
  }
}

TEST_CASE("a cheating dealer-side party is caught at the analytic rate") {
  SessionConfig cfg = base_config(200000);
  cfg.adversary = Adversary::kCheatingAlice;
  const auto [res, diag] = run_session_detailed(cfg, 13);
  check_accounting(cfg, res, diag);
  CHECK(res.abort);

  const double expect = oracles::kAliceErrorPiEighth;
  CHECK(std::abs(res.observed_error_rate - expect) <=
        5.0 * binomial_sigma(expect, static_cast<double>(res.disclosed_check_rounds)));

  const double n = static_cast<double>(cfg.n_rounds);
  const double sifted_fraction = static_cast<double>(res.sifted_rounds) / n;
  const double expect_sifted = oracles::kAliceSiftedPiEighth;
  CHECK(std::abs(sifted_fraction - expect_sifted) <=
        5.0 * binomial_sigma(expect_sifted, n));
}

TEST_CASE("a cheating receiver is invisible without role announcement") {
  SessionConfig cfg = base_config(100000);
  cfg.adversary = Adversary::kCheatingBob;
  const auto [res, diag] = run_session_detailed(cfg, 17);
  CHECK(res.observed_error_rate == 0.0);
  CHECK(!res.abort);
  check_accounting(cfg, res, diag);
  CHECK(cheating_bob_detection_rate(base_config(100000), 17) == 0.0);
}

TEST_CASE("role announcement exposes a cheating receiver") {
  SessionConfig cfg = base_config(100000);
  cfg.adversary = Adversary::kCheatingBob;
  cfg.role_announcement = true;
  const auto [res, diag] = run_session_detailed(cfg, 19);
  CHECK(res.observed_error_rate > 0.05);
  CHECK(res.abort);

  SessionConfig plain = base_config(100000);
  plain.role_announcement = true;
  CHECK(cheating_bob_detection_rate(plain, 19) == res.observed_error_rate);
}

TEST_CASE("interception forwards exact protocol states") {
  const SessionConfig cfg = base_config(10);
  const auto protocol = build_two_party_protocol(
      {cfg.theta0, loccusd::cx{1.0, 0.0}, loccusd::ProjectiveRole::kAlice});
  RngStream rng(31, 0);
  CHECK_THROWS_AS(eve_intercept(2, cfg, rng), std::domain_error);

  int successes = 0;
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const int sent = t % 2;
    const EveRecord rec = eve_intercept(sent, cfg, rng);
    if (rec.identified != kFail) {
      CHECK(rec.identified == sent);
      CHECK(testutil::max_abs_diff(rec.forwarded, protocol.state(rec.identified)) == 0.0);
      ++successes;
    } else {
      ++failures;
    }
  }
  CHECK(successes > 0);
  CHECK(failures > 0);

  SessionConfig fixed = cfg;
  fixed.eve_fallback = EveFallback::kResendFixedPsi0;
  for (int t = 0; t < 200; ++t) {
    const EveRecord rec = eve_intercept(1, fixed, rng);
    if (rec.identified == kFail) {
      CHECK(testutil::max_abs_diff(rec.forwarded, protocol.psi0) == 0.0);
      break;
    }
  }
}

TEST_CASE("selective cheating wins exactly the vanishing parity advantage") {
  SessionConfig cfg = base_config(400000);
  const double conclusive = 1.0 - oracles::kFailPiEighth;
  std::vector<double> accuracy;
  for (const int block : {1, 2, 4, 8}) {
    cfg.block_size = block;
    const double acc = selective_cheat_key_guess_accuracy(cfg, 37);
    const double expect = 0.5 + 0.5 * std::pow(0.5, block);
    const double blocks_min =
        0.9 * static_cast<double>(cfg.n_rounds) * conclusive / static_cast<double>(block);
    CHECK(std::abs(acc - expect) <= 5.0 * 0.5 / std::sqrt(blocks_min));
    accuracy.push_back(acc);
  }
  CHECK(accuracy[0] > accuracy[1]);
  CHECK(accuracy[1] > accuracy[2]);

  SessionConfig tiny = base_config(4);
  tiny.block_size = 1000;
  CHECK_THROWS_AS(selective_cheat_key_guess_accuracy(tiny, 1), std::domain_error);
}

TEST_CASE("analytic adversary rates at the frozen angle") {
  CHECK(std::abs(eve_error_rate_analytic(oracles::kPiEighth) - oracles::kEveErrorPiEighth) <=
        1e-15);
  CHECK(std::abs(cheating_alice_error_rate_analytic(oracles::kPiEighth) -
                 oracles::kAliceErrorPiEighth) <= 1e-15);
}

}  // TEST_SUITE
