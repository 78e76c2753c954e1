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

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "loccusd/commands.hpp"

namespace {

// Runs a command body against --out (or stdout) so the document lands in
// exactly one place; the human summary always goes to stderr.
int run_to(const std::string& path,
           const std::function<int(std::ostream&)>& body) {
  if (path.empty()) return body(std::cout);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return loccusd::kExitUsage;
  }
  return body(file);
}

int reject_csv(const std::string& format) {
  if (format == "json") return -1;
  std::cerr << "error: this command emits json only; csv applies to sweep\n";
  return loccusd::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "loccusd: error-free discrimination of two nonorthogonal multi-particle "
      "states by local measurements, with optical and secret-sharing "
      "experiments"};
  app.require_subcommand(1);

  loccusd::DiscriminateOptions dopt;
  std::string d_out, d_format = "json";
  CLI::App* disc = app.add_subcommand(
      "discriminate", "Seeded two-party trials vs the closed-form failure rate");
  disc->add_option("--theta0", dopt.theta0, "state angle in radians, (0, pi/4]")
      ->required();
  disc->add_option("--trials", dopt.trials, "number of trials (default 1e6)");
  disc->add_option("--seed", dopt.seed, "rng seed")->required();
  disc->add_option("--threads", dopt.threads, "worker threads, 0 = runtime default");
  disc->add_flag("--trace", dopt.trace, "embed the first 32 trial records");
  disc->add_flag("--reference", dopt.reference,
                 "use the full-tensor path instead of the precomputed tables");
  disc->add_option("--out", d_out, "write the document here instead of stdout");
  disc->add_option("--format", d_format, "json");

  loccusd::SweepOptions swopt;
  std::string sw_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Failure-rate table over a theta0 grid (csv or json)");
  sweep->add_option("--start", swopt.start, "first grid angle (default 0.1)");
  sweep->add_option("--stop", swopt.stop, "last grid angle (default pi/4)");
  sweep->add_option("--points", swopt.points, "grid size (default 15)");
  sweep->add_option("--trials", swopt.trials, "trials per grid point");
  sweep->add_option("--seed", swopt.seed, "rng seed")->required();
  sweep->add_option("--threads", swopt.threads, "worker threads");
  sweep->add_option("--format", swopt.format, "csv (default) or json");
  sweep->add_option("--out", sw_out, "write the table here instead of stdout");

  loccusd::OpticsOptions oopt;
  std::string o_out, o_format = "json";
  CLI::App* optics = app.add_subcommand(
      "optics", "Interferometer detector rates vs the three-outcome measurement");
  optics->add_option("--theta0", oopt.theta0, "state angle in radians, (0, pi/4]")
      ->required();
  optics->add_option("--grid-points", oopt.grid_points,
                     "equivalence scan resolution (default 100)");
  optics->add_option("--out", o_out, "write the document here instead of stdout");
  optics->add_option("--format", o_format, "json");

  loccusd::MultipartyOptions mopt;
  std::string m_out, m_format = "json";
  CLI::App* multi = app.add_subcommand(
      "multiparty", "N-party chain trials, qubit pair or qutrit triple");
  multi->add_flag("--qutrit", mopt.qutrit,
                  "three symmetric N-qutrit states instead of the qubit pair");
  multi->add_option("--n", mopt.n_parties, "number of parties (default 3)");
  multi->add_option("--theta0", mopt.theta0, "qubit family angle, (0, pi/4]");
  multi->add_option("--c0", mopt.coeffs[0], "qutrit coefficient 0 (default 0.8)");
  multi->add_option("--c1", mopt.coeffs[1], "qutrit coefficient 1 (default 0.42)");
  multi->add_option("--c2", mopt.coeffs[2],
                    "qutrit coefficient 2 (default completes the unit triple)");
  multi->add_option("--trials", mopt.trials, "number of trials (default 1e5)");
  multi->add_option("--seed", mopt.seed, "rng seed")->required();
  multi->add_option("--threads", mopt.threads, "worker threads");
  multi->add_flag("--trace", mopt.trace, "embed the first 32 trial records");
  multi->add_flag("--reference", mopt.reference, "full-tensor path");
  multi->add_option("--out", m_out, "write the document here instead of stdout");
  multi->add_option("--format", m_format, "json");

  loccusd::SecretShareOptions sopt;
  std::string s_out, s_format = "json";
  CLI::App* secret = app.add_subcommand(
      "secretshare", "Dealer-to-two-parties key session with optional adversary");
  secret->add_option("--theta0", sopt.theta0, "state angle in radians, (0, pi/4]")
      ->required();
  secret->add_option("--rounds", sopt.rounds, "session rounds (default 1e5)");
  secret->add_option("--check-fraction", sopt.check_fraction,
                     "fraction of sifted rounds disclosed (default 0.1)");
  secret->add_option("--block-size", sopt.block_size,
                     "key bits are parities of blocks this long (default 1)");
  secret->add_flag("--announce-roles", sopt.announce_roles,
                   "dealer announces per round which party measures projectively");
  secret->add_option("--adversary", sopt.adversary,
                     "none | eve | cheating_alice | cheating_bob");
  secret->add_option("--eve-fallback", sopt.eve_fallback,
                     "resend_random | resend_fixed_psi0");
  secret->add_option("--seed", sopt.seed, "rng seed")->required();
  secret->add_option("--threads", sopt.threads, "worker threads");
  secret->add_option("--out", s_out, "write the document here instead of stdout");
  secret->add_option("--format", s_format, "json");

  loccusd::InfeasibilityOptions iopt;
  std::string i_out, i_format = "json";
  CLI::App* infeas = app.add_subcommand(
      "infeasibility",
      "Search for an error-free POVM pair with simultaneous failure signals");
  infeas->add_option("--theta0", iopt.theta0,
                     "angle fixing both Schmidt pairs (default pi/8)");
  infeas->add_option("--floor", iopt.detection_floor,
                     "lower bound on detection scales (default 1e-3)");
  infeas->add_option("--restarts", iopt.restarts, "search restarts (default 200)");
  infeas->add_option("--iterations", iopt.iterations,
                     "descent steps per restart (default 2000)");
  infeas->add_option("--seed", iopt.seed, "rng seed")->required();
  infeas->add_option("--threads", iopt.threads, "worker threads");
  infeas->add_option("--out", i_out, "write the document here instead of stdout");
  infeas->add_option("--format", i_format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : loccusd::kExitUsage;
  }

  if (*disc) {
    if (int bad = reject_csv(d_format); bad >= 0) return bad;
    return run_to(d_out, [&](std::ostream& os) {
      return loccusd::cmd_discriminate(dopt, os, std::cerr);
    });
  }
  if (*sweep) {
    return run_to(sw_out, [&](std::ostream& os) {
      return loccusd::cmd_sweep(swopt, os, std::cerr);
    });
  }
  if (*optics) {
    if (int bad = reject_csv(o_format); bad >= 0) return bad;
    return run_to(o_out, [&](std::ostream& os) {
      return loccusd::cmd_optics(oopt, os, std::cerr);
    });
  }
  if (*multi) {
    if (int bad = reject_csv(m_format); bad >= 0) return bad;
    return run_to(m_out, [&](std::ostream& os) {
      return loccusd::cmd_multiparty(mopt, os, std::cerr);
    });
  }
  if (*secret) {
    if (int bad = reject_csv(s_format); bad >= 0) return bad;
    return run_to(s_out, [&](std::ostream& os) {
      return loccusd::cmd_secretshare(sopt, os, std::cerr);
    });
  }
  if (*infeas) {
    if (int bad = reject_csv(i_format); bad >= 0) return bad;
    return run_to(i_out, [&](std::ostream& os) {
      return loccusd::cmd_infeasibility(iopt, os, std::cerr);
    });
  }
  return loccusd::kExitUsage;
}
