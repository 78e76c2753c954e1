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

#include <cmath>
#include <cstdint>

namespace loccusd {

// Splittable counter-based generator (splitmix64 core). A stream is fully
// determined by (seed, stream_id), so the stream for trial t can be
// reconstructed anywhere: results never depend on thread count or schedule.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id)
      : state_(mix(mix(seed + kGolden) ^ mix(stream_id * kGolden2 + kGolden))) {}

  uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  int bit() { return static_cast<int>(next_u64() >> 63); }

  // Unbiased integer in [0, n) via rejection.
  uint64_t uniform_below(uint64_t n) {
    const uint64_t limit = n * (~uint64_t{0} / n);
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    // uniform() can return exactly 0; nudge to keep the log finite.
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr uint64_t kGolden2 = 0xBF58476D1CE4E5B9ull;

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace loccusd
