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
//
// Throughput comparison of the table-driven trial kernels against the
// full-tensor reference path, serial and OpenMP-parallel, plus an aggregate
// equality check between the two paths at a shared seed and scale.
//
//   loccusd_bench [fast_trials] [reference_trials] [seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "loccusd/multiparty.hpp"
#include "loccusd/protocol2.hpp"
#include "loccusd/runner.hpp"

namespace {

using loccusd::BatchOptions;
using loccusd::BatchStats;

struct Workload {
  const char* name;
  std::function<BatchStats(const BatchOptions&)> run;
};

double run_timed(const Workload& w, BatchOptions opts, BatchStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  *stats = w.run(opts);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool same_aggregates(const BatchStats& a, const BatchStats& b) {
  if (a.trials != b.trials || a.sent_counts != b.sent_counts) return false;
  return a.outcome_counts == b.outcome_counts;
}

}  // namespace

int main(int argc, char** argv) {
  const uint64_t fast_trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000000;
  const uint64_t ref_trials = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200000;
  const uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 42;

  const double theta0 = 0.39269908169872414;  // pi/8
  const loccusd::ProtocolSpec two_party{theta0, loccusd::cx{1.0, 0.0},
                                        loccusd::ProjectiveRole::kAlice};
  loccusd::MultiQubitSpec four_qubit;
  four_qubit.n_parties = 4;
  four_qubit.theta0 = theta0;
  loccusd::QutritSpec three_qutrit;
  three_qutrit.n_parties = 3;
  three_qutrit.coeffs = {loccusd::cx(0.8, 0.0), loccusd::cx(0.42, 0.0),
                         loccusd::cx(std::sqrt(1.0 - 0.8 * 0.8 - 0.42 * 0.42), 0.0)};

  const Workload workloads[] = {
      {"two-party pi/8",
       [&](const BatchOptions& o) { return loccusd::run_two_party_batch(two_party, o); }},
      {"four-qubit pi/8",
       [&](const BatchOptions& o) { return loccusd::run_nqubit_batch(four_qubit, o); }},
      {"three-qutrit",
       [&](const BatchOptions& o) { return loccusd::run_nqutrit_batch(three_qutrit, o); }},
  };

  std::printf("%-16s %-10s %-9s %12s %10s %12s\n", "workload", "kernel", "mode",
              "trials", "seconds", "Mtrials/s");
  bool all_equal = true;
  for (const Workload& w : workloads) {
    BatchStats fast_check, ref_check;
    for (const bool fast : {true, false}) {
      for (const bool parallel : {true, false}) {
        BatchOptions opts;
        opts.trials = fast ? fast_trials : ref_trials;
        opts.seed = seed;
        opts.fast_kernel = fast;
        opts.parallel = parallel;
        BatchStats stats;
        const double secs = run_timed(w, opts, &stats);
        std::printf("%-16s %-10s %-9s %12llu %10.3f %12.2f\n", w.name,
                    fast ? "fast" : "reference", parallel ? "parallel" : "serial",
                    static_cast<unsigned long long>(opts.trials), secs,
                    static_cast<double>(opts.trials) / secs / 1e6);
      }
    }
    // Equality check at the reference scale: same seed, same per-trial
    // streams, so the two paths must produce identical counters.
    BatchOptions opts;
    opts.trials = ref_trials;
    opts.seed = seed;
    opts.fast_kernel = true;
    fast_check = w.run(opts);
    opts.fast_kernel = false;
    ref_check = w.run(opts);
    const bool equal = same_aggregates(fast_check, ref_check);
    all_equal = all_equal && equal;
    std::printf("%-16s aggregate check fast vs reference: %s\n", w.name,
                equal ? "OK" : "MISMATCH");
  }
  return all_equal ? 0 : 1;
}
