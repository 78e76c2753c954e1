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
#include <iosfwd>
#include <string>

namespace loccusd {

// Command bodies behind the CLI, separated from flag parsing so tests can
// drive them in process. Each writes one machine-readable document to `out`
// (JSON unless noted), a short human summary plus the run timestamp to
// `err`, and returns a process exit code:
//   0  ran and all in-run assertions held
//   1  an in-run assertion failed (e.g. a decode error appeared)
//   2  invalid options
// Documents never contain wall-clock data, so a rerun with equal options and
// seed is byte-identical.

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

// theta0 slightly above pi/4 (within 5e-4, e.g. the rounded literal 0.7854)
// snaps to exactly pi/4 with a note on `err`; anything further out is an
// option error. Returns the effective angle.
double snap_theta0(double theta0, std::ostream& err);

struct DiscriminateOptions {
  double theta0 = 0.0;
  uint64_t trials = 1000000;
  uint64_t seed = 0;
  int threads = 0;        // 0 keeps the runtime default
  bool trace = false;     // embed the first trial records
  bool reference = false; // force the full-tensor path instead of the tables
};
int cmd_discriminate(const DiscriminateOptions& opt, std::ostream& out,
                     std::ostream& err);

struct SweepOptions {
  double start = 0.1;
  double stop = 0.7853981633974483;  // pi/4
  int points = 15;
  uint64_t trials = 100000;
  uint64_t seed = 0;
  int threads = 0;
  std::string format = "csv";  // csv | json
};
// CSV column order is fixed: theta0,p_fail_emp,p_fail_ana,p_idp,p_e
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

struct OpticsOptions {
  double theta0 = 0.0;
  int grid_points = 100;  // interferometer-vs-measurement scan resolution
};
int cmd_optics(const OpticsOptions& opt, std::ostream& out, std::ostream& err);

struct MultipartyOptions {
  bool qutrit = false;
  int n_parties = 3;
  double theta0 = 0.0;                       // qubit family
  std::array<double, 3> coeffs = {0.8, 0.42, -1.0};  // qutrit family; -1 = complete
  uint64_t trials = 100000;
  uint64_t seed = 0;
  int threads = 0;
  bool trace = false;
  bool reference = false;
};
int cmd_multiparty(const MultipartyOptions& opt, std::ostream& out,
                   std::ostream& err);

struct SecretShareOptions {
  double theta0 = 0.0;
  uint64_t rounds = 100000;
  double check_fraction = 0.1;
  int block_size = 1;
  bool announce_roles = false;
  std::string adversary = "none";  // none | eve | cheating_alice | cheating_bob
  std::string eve_fallback = "resend_random";  // resend_random | resend_fixed_psi0
  uint64_t seed = 0;
  int threads = 0;
};
int cmd_secretshare(const SecretShareOptions& opt, std::ostream& out,
                    std::ostream& err);

struct InfeasibilityOptions {
  double theta0 = 0.39269908169872414;  // pi/8; both lambda pairs from it
  double detection_floor = 1e-3;
  int restarts = 200;
  int iterations = 2000;
  uint64_t seed = 0;
  int threads = 0;
};
int cmd_infeasibility(const InfeasibilityOptions& opt, std::ostream& out,
                      std::ostream& err);

}  // namespace loccusd

