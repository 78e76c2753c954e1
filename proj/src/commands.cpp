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

#include "loccusd/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"
#include "loccusd/feasibility.hpp"
#include "loccusd/ket.hpp"
#include "loccusd/manifest.hpp"
#include "loccusd/multiparty.hpp"
#include "loccusd/optics.hpp"
#include "loccusd/protocol2.hpp"
#include "loccusd/qss.hpp"
#include "loccusd/runner.hpp"

namespace loccusd {
namespace {

using json = nlohmann::json;

constexpr double kPiQuarter = 0.78539816339744831;
constexpr uint64_t kTraceLimit = 32;

void apply_thread_option(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

// The document placed under "manifest" in every JSON output. Wall-clock
// time stays out so reruns are byte-identical; it goes to `err` instead.
json manifest_json(const RunManifest& m, const json& config) {
  return json{{"command", m.command},
              {"config", config},
              {"input_hash", m.input_hash},
              {"seed", m.seed}};
}

void emit(const json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

void err_summary(const RunManifest& m, std::ostream& err) {
  err << m.command << " run " << m.input_hash << " at " << m.timestamp << '\n';
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double binomial_z(double empirical, double expected, uint64_t n) {
  const double var = expected * (1.0 - expected) / static_cast<double>(n);
  if (var > 0.0) return (empirical - expected) / std::sqrt(var);
  return empirical == expected ? 0.0 : 1e308;
}

json trial_json(const TrialRecord& rec) {
  return json{{"sent", rec.sent},
              {"alice_label", rec.alice_label},
              {"bob_label", rec.bob_label},
              {"decoded", rec.decoded}};
}

json multi_trial_json(const MultiTrialRecord& rec) {
  return json{{"sent", rec.sent},
              {"projective_counts", rec.tally.counts},
              {"usd_result", rec.tally.usd_result},
              {"decoded", rec.decoded}};
}

int usage_error(std::ostream& err, const std::string& what) {
  err << "error: " << what << '\n';
  return kExitUsage;
}

}  // namespace

double snap_theta0(double theta0, std::ostream& err) {
  if (theta0 > kPiQuarter && theta0 <= kPiQuarter + 5e-4) {
    err << "note: theta0 " << theta0 << " snapped to pi/4\n";
    return kPiQuarter;
  }
  return theta0;
}

int cmd_discriminate(const DiscriminateOptions& opt, std::ostream& out,
                     std::ostream& err) {
  try {
    const double theta0 = snap_theta0(opt.theta0, err);
    if (!(theta0 > 0.0) || theta0 > kPiQuarter)
      return usage_error(err, "theta0 must lie in (0, pi/4]");
    if (opt.trials < 1) return usage_error(err, "trials must be >= 1");
    apply_thread_option(opt.threads);

    const ProtocolSpec spec{theta0, cx{1.0, 0.0}, ProjectiveRole::kAlice};
    BatchOptions batch;
    batch.trials = opt.trials;
    batch.seed = opt.seed;
    batch.threads = opt.threads;
    batch.fast_kernel = !opt.reference;
    const BatchStats stats = run_two_party_batch(spec, batch);

    const double analytic = failure_probability(spec);
    const TwoPartyProtocol protocol = build_two_party_protocol(spec);
    const double idp_fail = 1.0 - idp_success_prob(protocol.psi0, protocol.psi1);
    const double empirical = stats.failure_rate();

    const json config{{"reference", opt.reference},
                      {"seed", opt.seed},
                      {"theta0", theta0},
                      {"threads", opt.threads},
                      {"trace", opt.trace},
                      {"trials", opt.trials}};
    const RunManifest man = make_manifest("discriminate", config.dump(), opt.seed);

    json doc{{"manifest", manifest_json(man, config)},
             {"theta0", theta0},
             {"trials", opt.trials},
             {"kernel", opt.reference ? "reference" : "fast"},
             {"sent_counts", {stats.sent_counts[0], stats.sent_counts[1]}},
             {"outcome_counts",
              {{"conclusive_0", stats.outcome_counts[0][0] + stats.outcome_counts[1][0]},
               {"conclusive_1", stats.outcome_counts[0][1] + stats.outcome_counts[1][1]},
               {"failure", stats.inconclusive()}}},
             {"error_count", stats.wrong()},
             {"empirical_failure_rate", empirical},
             {"analytic_failure_rate", analytic},
             {"idp_failure_rate", idp_fail},
             {"z_score", binomial_z(empirical, analytic, opt.trials)}};

    if (opt.trace) {
      const TwoPartyTables tables = make_two_party_tables(protocol);
      json trace = json::array();
      for (uint64_t t = 0; t < std::min(opt.trials, kTraceLimit); ++t) {
        RngStream rng(opt.seed, t);
        const int sent = static_cast<int>(rng.uniform_below(2));
        TrialRecord rec = opt.reference ? run_two_party_trial(protocol, sent, rng)
                                        : run_two_party_trial_fast(tables, sent, rng);
        rec.sent = sent;
        trace.push_back(trial_json(rec));
      }
      doc["trace"] = std::move(trace);
    }

    const bool ok = stats.wrong() == 0 && std::abs(analytic - idp_fail) <= kTolAlgebra;
    doc["zero_error_assertion"] = stats.wrong() == 0;
    emit(doc, out);
    err_summary(man, err);
    err << "failure rate " << empirical << " vs analytic " << analytic
        << ", errors " << stats.wrong() << '\n';
    return ok ? kExitOk : kExitAssertion;
  } catch (const std::domain_error& e) {
    return usage_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitAssertion;
  }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.points < 1) return usage_error(err, "sweep needs at least one grid point");
    if (opt.trials < 1) return usage_error(err, "trials must be >= 1");
    if (opt.format != "csv" && opt.format != "json")
      return usage_error(err, "format must be csv or json");
    if (!(opt.start > 0.0) || opt.stop > kPiQuarter + 5e-4 || opt.start > opt.stop)
      return usage_error(err, "grid must satisfy 0 < start <= stop <= pi/4");
    apply_thread_option(opt.threads);

    const json config{{"format", opt.format}, {"points", opt.points},
                      {"seed", opt.seed},     {"start", opt.start},
                      {"stop", opt.stop},     {"threads", opt.threads},
                      {"trials", opt.trials}};
    const RunManifest man = make_manifest("sweep", config.dump(), opt.seed);

    struct Row {
      double theta0, emp, ana, idp, helstrom;
    };
    std::vector<Row> rows;
    rows.reserve(static_cast<size_t>(opt.points));
    uint64_t errors = 0;
    for (int i = 0; i < opt.points; ++i) {
      const double frac =
          opt.points == 1 ? 0.0
                          : static_cast<double>(i) / static_cast<double>(opt.points - 1);
      double theta = opt.start + frac * (opt.stop - opt.start);
      theta = std::min(theta, kPiQuarter);
      const ProtocolSpec spec{theta, cx{1.0, 0.0}, ProjectiveRole::kAlice};
      BatchOptions batch;
      batch.trials = opt.trials;
      batch.seed = opt.seed + static_cast<uint64_t>(i);
      batch.threads = opt.threads;
      const BatchStats stats = run_two_party_batch(spec, batch);
      errors += stats.wrong();
      const TwoPartyProtocol protocol = build_two_party_protocol(spec);
      rows.push_back({theta, stats.failure_rate(), failure_probability(spec),
                      idp_success_prob(protocol.psi0, protocol.psi1),
                      min_error_prob(protocol.psi0, protocol.psi1)});
    }

    if (opt.format == "csv") {
      out << "theta0,p_fail_emp,p_fail_ana,p_idp,p_e\n";
      for (const Row& r : rows)
        out << format_g17(r.theta0) << ',' << format_g17(r.emp) << ','
            << format_g17(r.ana) << ',' << format_g17(r.idp) << ','
            << format_g17(r.helstrom) << '\n';
    } else {
      json jrows = json::array();
      for (const Row& r : rows)
        jrows.push_back(json{{"theta0", r.theta0},
                             {"p_fail_emp", r.emp},
                             {"p_fail_ana", r.ana},
                             {"p_idp", r.idp},
                             {"p_e", r.helstrom}});
      emit(json{{"manifest", manifest_json(man, config)}, {"rows", jrows}}, out);
    }
    err_summary(man, err);
    err << rows.size() << " grid points, " << errors << " decode errors\n";
    return errors == 0 ? kExitOk : kExitAssertion;
  } catch (const std::domain_error& e) {
    return usage_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitAssertion;
  }
}

int cmd_optics(const OpticsOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const double theta0 = snap_theta0(opt.theta0, err);
    if (!(theta0 > 0.0) || theta0 > kPiQuarter)
      return usage_error(err, "theta0 must lie in (0, pi/4]");
    if (opt.grid_points < 1) return usage_error(err, "grid_points must be >= 1");

    const json config{{"grid_points", opt.grid_points}, {"theta0", theta0}};
    const RunManifest man = make_manifest("optics", config.dump(), 0);

    // Detector-vs-measurement comparison at the requested angle. The
    // interferometer's plus port plays conclusive label 1, minus label 0.
    const auto povm_probs = [](double theta, int psi_index) {
      const ProtocolSpec spec{theta, cx{1.0, 0.0}, ProjectiveRole::kAlice};
      const TwoPartyProtocol protocol = build_two_party_protocol(spec);
      const auto states = collapsed_bob_states(spec, 0);
      const Ket& psi = psi_index == 0 ? states.first : states.second;
      DetectionProbs probs{};
      for (const auto& [label, p] : outcome_probs(protocol.bob, psi, 0)) {
        if (label == 1)
          probs.plus = p;
        else if (label == 0)
          probs.minus = p;
        else
          probs.fail = p;
      }
      return probs;
    };

    double local_diff = 0.0;
    json inputs = json::array();
    for (int k = 0; k < 2; ++k) {
      const DetectionProbs det = run_bob_interferometer(theta0, k);
      const DetectionProbs ref = povm_probs(theta0, k);
      const double diff = std::max({std::abs(det.plus - ref.plus),
                                    std::abs(det.minus - ref.minus),
                                    std::abs(det.fail - ref.fail)});
      local_diff = std::max(local_diff, diff);
      inputs.push_back(json{
          {"state_index", k},
          {"detector", {{"plus", det.plus}, {"minus", det.minus}, {"fail", det.fail}}},
          {"measurement",
           {{"conclusive_1", ref.plus}, {"conclusive_0", ref.minus}, {"fail", ref.fail}}},
          {"max_abs_diff", diff}});
    }

    double grid_diff = 0.0;
    double unitarity = 0.0;
    for (int i = 0; i < opt.grid_points; ++i) {
      const double theta = kPiQuarter * static_cast<double>(i + 1) /
                           static_cast<double>(opt.grid_points);
      const CMatrix u = circuit_unitary(bob_circuit(theta));
      const CMatrix gram = u.adjoint() * u;
      unitarity = std::max(unitarity, (gram - CMatrix::identity(6)).max_abs());
      for (int k = 0; k < 2; ++k) {
        const DetectionProbs det = run_bob_interferometer(theta, k);
        const DetectionProbs ref = povm_probs(theta, k);
        grid_diff = std::max({grid_diff, std::abs(det.plus - ref.plus),
                              std::abs(det.minus - ref.minus),
                              std::abs(det.fail - ref.fail)});
      }
    }

    const bool ok = local_diff <= kTolAlgebra && grid_diff <= kTolAlgebra &&
                    unitarity <= kTolAlgebra;
    json doc{{"manifest", manifest_json(man, config)},
             {"theta0", theta0},
             {"inputs", inputs},
             {"grid_points", opt.grid_points},
             {"grid_max_abs_diff", grid_diff},
             {"unitarity_residual", unitarity},
             {"equivalence_tolerance", kTolAlgebra},
             {"equivalent", ok}};
    emit(doc, out);
    err_summary(man, err);
    err << "max deviation " << std::max(local_diff, grid_diff) << " over "
        << opt.grid_points << " angles\n";
    return ok ? kExitOk : kExitAssertion;
  } catch (const std::domain_error& e) {
    return usage_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitAssertion;
  }
}

int cmd_multiparty(const MultipartyOptions& opt, std::ostream& out,
                   std::ostream& err) {
  try {
    if (opt.trials < 1) return usage_error(err, "trials must be >= 1");
    if (opt.n_parties < 2 || opt.n_parties > kMaxParties)
      return usage_error(err, "n_parties must lie in [2, 12]");
    apply_thread_option(opt.threads);

    json config;
    json doc;
    uint64_t wrong = 0;
    double empirical = 0.0;
    double analytic = 0.0;
    BatchOptions batch;
    batch.trials = opt.trials;
    batch.seed = opt.seed;
    batch.threads = opt.threads;
    batch.fast_kernel = !opt.reference;

    if (opt.qutrit) {
      std::array<double, 3> c = opt.coeffs;
      if (c[0] <= 0.0 || c[1] <= 0.0)
        return usage_error(err, "qutrit coefficients must be positive");
      if (c[2] < 0.0) {
        const double rest = 1.0 - c[0] * c[0] - c[1] * c[1];
        if (rest <= 0.0)
          return usage_error(err, "c0^2 + c1^2 must stay below 1 so c2 can complete the triple");
        c[2] = std::sqrt(rest);
      }
      const double norm2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
      if (std::abs(norm2 - 1.0) > 1e-6)
        return usage_error(err, "qutrit coefficients must be normalized");
      const double scale = 1.0 / std::sqrt(norm2);
      for (double& v : c) v *= scale;

      QutritSpec spec;
      spec.n_parties = opt.n_parties;
      spec.coeffs = {cx(c[0], 0.0), cx(c[1], 0.0), cx(c[2], 0.0)};
      const BatchStats stats = run_nqutrit_batch(spec, batch);
      wrong = stats.wrong();
      empirical = stats.failure_rate();
      analytic = nqutrit_failure_probability(spec);

      config = json{{"coeffs", {c[0], c[1], c[2]}},
                    {"family", "qutrit"},
                    {"n_parties", opt.n_parties},
                    {"reference", opt.reference},
                    {"seed", opt.seed},
                    {"threads", opt.threads},
                    {"trace", opt.trace},
                    {"trials", opt.trials}};
      doc["coeffs"] = {c[0], c[1], c[2]};
      doc["sent_counts"] = stats.sent_counts;

      if (opt.trace) {
        const QutritTables tables = make_nqutrit_tables(spec);
        json trace = json::array();
        for (uint64_t t = 0; t < std::min(opt.trials, kTraceLimit); ++t) {
          RngStream rng(opt.seed, t);
          const int sent = static_cast<int>(rng.uniform_below(3));
          MultiTrialRecord rec = opt.reference
                                     ? run_nqutrit_trial(spec, sent, rng)
                                     : run_nqutrit_trial_fast(tables, sent, rng);
          rec.sent = sent;
          trace.push_back(multi_trial_json(rec));
        }
        doc["trace"] = std::move(trace);
      }
    } else {
      const double theta0 = snap_theta0(opt.theta0, err);
      if (!(theta0 > 0.0) || theta0 > kPiQuarter)
        return usage_error(err, "theta0 must lie in (0, pi/4]");
      MultiQubitSpec spec;
      spec.n_parties = opt.n_parties;
      spec.theta0 = theta0;
      const BatchStats stats = run_nqubit_batch(spec, batch);
      wrong = stats.wrong();
      empirical = stats.failure_rate();
      analytic = nqubit_failure_probability(spec);

      config = json{{"family", "qubit"},
                    {"n_parties", opt.n_parties},
                    {"reference", opt.reference},
                    {"seed", opt.seed},
                    {"theta0", theta0},
                    {"threads", opt.threads},
                    {"trace", opt.trace},
                    {"trials", opt.trials}};
      doc["theta0"] = theta0;
      doc["sent_counts"] = {stats.sent_counts[0], stats.sent_counts[1]};

      if (opt.trace) {
        const MultiQubitTables tables = make_nqubit_tables(spec);
        json trace = json::array();
        for (uint64_t t = 0; t < std::min(opt.trials, kTraceLimit); ++t) {
          RngStream rng(opt.seed, t);
          const int sent = static_cast<int>(rng.uniform_below(2));
          MultiTrialRecord rec = opt.reference
                                     ? run_nqubit_trial(spec, sent, rng)
                                     : run_nqubit_trial_fast(tables, sent, rng);
          rec.sent = sent;
          trace.push_back(multi_trial_json(rec));
        }
        doc["trace"] = std::move(trace);
      }
    }

    const RunManifest man =
        make_manifest("multiparty", config.dump(), opt.seed);
    doc["manifest"] = manifest_json(man, config);
    doc["family"] = opt.qutrit ? "qutrit" : "qubit";
    doc["n_parties"] = opt.n_parties;
    doc["trials"] = opt.trials;
    doc["kernel"] = opt.reference ? "reference" : "fast";
    doc["error_count"] = wrong;
    doc["zero_error_assertion"] = wrong == 0;
    doc["empirical_failure_rate"] = empirical;
    doc["analytic_failure_rate"] = analytic;
    doc["z_score"] = binomial_z(empirical, analytic, opt.trials);

    emit(doc, out);
    err_summary(man, err);
    err << "failure rate " << empirical << " vs analytic " << analytic
        << ", errors " << wrong << '\n';
    return wrong == 0 ? kExitOk : kExitAssertion;
  } catch (const std::domain_error& e) {
    return usage_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitAssertion;
  }
}

int cmd_secretshare(const SecretShareOptions& opt, std::ostream& out,
                    std::ostream& err) {
  try {
    const double theta0 = snap_theta0(opt.theta0, err);
    if (!(theta0 > 0.0) || theta0 > kPiQuarter)
      return usage_error(err, "theta0 must lie in (0, pi/4]");
    if (opt.rounds < 1) return usage_error(err, "rounds must be >= 1");
    apply_thread_option(opt.threads);

    SessionConfig cfg;
    cfg.theta0 = theta0;
    cfg.n_rounds = opt.rounds;
    cfg.check_fraction = opt.check_fraction;
    cfg.block_size = opt.block_size;
    cfg.role_announcement = opt.announce_roles;
    if (opt.adversary == "none")
      cfg.adversary = Adversary::kNone;
    else if (opt.adversary == "eve")
      cfg.adversary = Adversary::kEve;
    else if (opt.adversary == "cheating_alice")
      cfg.adversary = Adversary::kCheatingAlice;
    else if (opt.adversary == "cheating_bob")
      cfg.adversary = Adversary::kCheatingBob;
    else
      return usage_error(err,
                         "adversary must be none, eve, cheating_alice or cheating_bob");
    if (opt.eve_fallback == "resend_random")
      cfg.eve_fallback = EveFallback::kResendRandom;
    else if (opt.eve_fallback == "resend_fixed_psi0")
      cfg.eve_fallback = EveFallback::kResendFixedPsi0;
    else
      return usage_error(err, "eve_fallback must be resend_random or resend_fixed_psi0");

    const auto [result, diag] = run_session_detailed(cfg, opt.seed);

    const json config{{"adversary", opt.adversary},
                      {"announce_roles", opt.announce_roles},
                      {"block_size", opt.block_size},
                      {"check_fraction", opt.check_fraction},
                      {"eve_fallback", opt.eve_fallback},
                      {"rounds", opt.rounds},
                      {"seed", opt.seed},
                      {"theta0", theta0},
                      {"threads", opt.threads}};
    const RunManifest man = make_manifest("secretshare", config.dump(), opt.seed);

    // Bookkeeping identity and, for honest sessions, the hard zero-error
    // guarantee gate the exit code.
    const bool counts_ok = diag.kept_for_key + diag.discarded_rounds +
                               result.disclosed_check_rounds ==
                           cfg.n_rounds;
    const bool honest_ok = cfg.adversary != Adversary::kNone ||
                           (result.observed_error_rate == 0.0 && !result.abort);
    const bool ok = counts_ok && honest_ok;

    json doc{{"manifest", manifest_json(man, config)},
             {"theta0", theta0},
             {"n_rounds", opt.rounds},
             {"adversary", opt.adversary},
             {"sifted_rounds", result.sifted_rounds},
             {"disclosed_check_rounds", result.disclosed_check_rounds},
             {"observed_error_rate", result.observed_error_rate},
             {"abort", result.abort},
             {"key_length", result.key_bits.size()},
             {"key_bits", result.key_bits},
             {"diagnostics",
              {{"discarded_rounds", diag.discarded_rounds},
               {"kept_for_key", diag.kept_for_key},
               {"check_mismatches", diag.check_mismatches},
               {"adversary_usd_success", diag.adversary_usd_success},
               {"adversary_usd_failure", diag.adversary_usd_failure}}},
             {"round_accounting_ok", counts_ok}};
    emit(doc, out);
    err_summary(man, err);
    err << "error rate " << result.observed_error_rate << " over "
        << result.disclosed_check_rounds << " checks, abort "
        << (result.abort ? "yes" : "no") << '\n';
    return ok ? kExitOk : kExitAssertion;
  } catch (const std::domain_error& e) {
    return usage_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitAssertion;
  }
}

int cmd_infeasibility(const InfeasibilityOptions& opt, std::ostream& out,
                      std::ostream& err) {
  try {
    const double theta0 = snap_theta0(opt.theta0, err);
    if (!(theta0 > 0.0) || theta0 > kPiQuarter)
      return usage_error(err, "theta0 must lie in (0, pi/4]");
    if (opt.restarts < 1 || opt.iterations < 1)
      return usage_error(err, "restarts and iterations must be >= 1");
    if (opt.detection_floor < 0.0 || opt.detection_floor >= 1.0)
      return usage_error(err, "detection_floor must lie in [0, 1)");
    apply_thread_option(opt.threads);

    const double c2 = std::cos(theta0) * std::cos(theta0);
    const std::array<double, 2> lambda = {c2, 1.0 - c2};
    const SearchResult res = infeasibility_search(
        lambda, lambda, opt.detection_floor, opt.restarts, opt.iterations, opt.seed);

    const json config{{"detection_floor", opt.detection_floor},
                      {"iterations", opt.iterations},
                      {"restarts", opt.restarts},
                      {"seed", opt.seed},
                      {"theta0", theta0},
                      {"threads", opt.threads}};
    const RunManifest man = make_manifest("infeasibility", config.dump(), opt.seed);

    // With no detection requirement the all-fail assignment is reachable
    // and the search must land on an exact zero.
    const bool ok = opt.detection_floor > 0.0 || res.best_residual <= 1e-10;

    json doc{{"manifest", manifest_json(man, config)},
             {"lambda0", lambda},
             {"lambda1", lambda},
             {"detection_floor", opt.detection_floor},
             {"restarts", res.restarts},
             {"iterations", res.iterations},
             {"best_residual", res.best_residual},
             {"best_restart", res.best_restart}};
    emit(doc, out);
    err_summary(man, err);
    err << "best residual " << res.best_residual << " from restart "
        << res.best_restart << '\n';
    return ok ? kExitOk : kExitAssertion;
  } catch (const std::domain_error& e) {
    return usage_error(err, e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(err, e.what());
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitAssertion;
  }
}

}  // namespace loccusd
