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
#include <cstdint>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "loccusd/protocol2.hpp"
#include "loccusd/rng.hpp"

namespace loccusd {

// Aggregate counters for a batch of discrimination trials, for up to three
// candidate states. Counters are integers so merge order cannot change the
// result.
struct BatchStats {
  uint64_t trials = 0;
  std::array<uint64_t, 3> sent_counts{};
  // outcome_counts[sent][d] where d = decoded label for 0..2 and 3 = failure.
  std::array<std::array<uint64_t, 4>, 3> outcome_counts{};

  void record(int sent, int decoded) {
    ++trials;
    ++sent_counts[static_cast<size_t>(sent)];
    const size_t d = decoded == kFail ? 3 : static_cast<size_t>(decoded);
    ++outcome_counts[static_cast<size_t>(sent)][d];
  }

  void merge(const BatchStats& other) {
    trials += other.trials;
    for (size_t k = 0; k < 3; ++k) {
      sent_counts[k] += other.sent_counts[k];
      for (size_t d = 0; d < 4; ++d) outcome_counts[k][d] += other.outcome_counts[k][d];
    }
  }

  uint64_t correct() const {
    uint64_t n = 0;
    for (size_t k = 0; k < 3; ++k) n += outcome_counts[k][k];
    return n;
  }
  uint64_t wrong() const {
    uint64_t n = 0;
    for (size_t k = 0; k < 3; ++k)
      for (size_t d = 0; d < 3; ++d)
        if (d != k) n += outcome_counts[k][d];
    return n;
  }
  uint64_t inconclusive() const {
    uint64_t n = 0;
    for (size_t k = 0; k < 3; ++k) n += outcome_counts[k][3];
    return n;
  }
  double failure_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(inconclusive()) / static_cast<double>(trials);
  }
  double error_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(wrong()) / static_cast<double>(trials);
  }
};

struct BatchOptions {
  uint64_t trials = 0;
  uint64_t seed = 0;
  int sent = -1;      // fixed state index, or -1 to draw uniformly per trial
  int n_states = 2;   // candidate states; 2 for qubit protocols, 3 for qutrits
  int threads = 0;    // 0 keeps the runtime default
  bool parallel = true;
  bool fast_kernel = true;  // precomputed branch tables instead of full tensors
};

// Runs `fn(sent, rng) -> decoded label` once per trial. Each trial gets its
// own stream keyed by (seed, trial index) and, when options.sent < 0, draws
// the sent state uniformly as the stream's first value; aggregates are
// therefore independent of both schedule and thread count.
template <class TrialFn>
BatchStats run_batch(const BatchOptions& options, TrialFn&& fn) {
  if (options.n_states < 2 || options.n_states > 3)
    throw std::domain_error("run_batch: n_states must be 2 or 3");
  if (options.sent >= options.n_states)
    throw std::domain_error("run_batch: sent out of range for n_states");
  const auto n = static_cast<int64_t>(options.trials);
  const auto n_states = static_cast<uint64_t>(options.n_states);

  auto one_trial = [&](int64_t t, BatchStats& stats) {
    RngStream rng(options.seed, static_cast<uint64_t>(t));
    const int sent =
        options.sent >= 0 ? options.sent : static_cast<int>(rng.uniform_below(n_states));
    stats.record(sent, fn(sent, rng));
  };

#ifdef _OPENMP
  if (options.parallel && n > 1) {
    BatchStats total;
    std::vector<BatchStats> partial;
#pragma omp parallel num_threads(options.threads > 0 ? options.threads : omp_get_max_threads())
    {
#pragma omp single
      partial.resize(static_cast<size_t>(omp_get_num_threads()));
      BatchStats local;
#pragma omp for schedule(static)
      for (int64_t t = 0; t < n; ++t) one_trial(t, local);
      partial[static_cast<size_t>(omp_get_thread_num())] = local;
    }
    for (const BatchStats& p : partial) total.merge(p);
    return total;
  }
#endif
  BatchStats stats;
  for (int64_t t = 0; t < n; ++t) one_trial(t, stats);
  return stats;
}

// Batch of two-party discrimination rounds under the given protocol.
BatchStats run_two_party_batch(const ProtocolSpec& spec, const BatchOptions& options);

}  // namespace loccusd
