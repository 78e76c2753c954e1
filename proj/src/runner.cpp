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

#include "loccusd/runner.hpp"

namespace loccusd {

BatchStats run_two_party_batch(const ProtocolSpec& spec, const BatchOptions& options) {
  const TwoPartyProtocol protocol = build_two_party_protocol(spec);
  if (options.fast_kernel) {
    const TwoPartyTables tables = make_two_party_tables(protocol);
    return run_batch(options, [&tables](int sent, RngStream& rng) {
      return run_two_party_trial_fast(tables, sent, rng).decoded;
    });
  }
  return run_batch(options, [&protocol](int sent, RngStream& rng) {
    return run_two_party_trial(protocol, sent, rng).decoded;
  });
}

}  // namespace loccusd
