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

#include "loccusd/cmatrix.hpp"
#include "loccusd/rng.hpp"

namespace loccusd {

// Searches for a local two-qubit POVM pair in which BOTH parties receive a
// failure signal whenever discrimination fails, with no errors allowed. The
// target pair lives in a shared Schmidt frame,
//
//   |Psi_0> = sqrt(lambda00)|00> + sqrt(lambda01)|11>
//   |Psi_1> = sqrt(lambda10)|00> - sqrt(lambda11)|11>,
//
// and label pairs {0,0},{1,1} decode to state 1, {0,1},{1,0} to state 0.
// Success elements are rank one, A_j = x_j|eta><r_j| and B_j = y_j|eta><s_j|;
// the failure effects are the completeness remainders I - sum of success
// effects, so completeness holds identically and only positivity of the
// remainder has to be watched.

struct FeasibilityParams {
  // Unit direction vectors of the success elements, components in the
  // shared Schmidt frame.
  std::array<std::array<cx, 2>, 2> r;  // Alice's labels 0 and 1
  std::array<std::array<cx, 2>, 2> s;  // Bob's labels 0 and 1
  // Success scales, in [0, 1]; the search keeps them >= the detection floor.
  std::array<double, 2> x;
  std::array<double, 2> y;
};

struct FeasibilityProblem {
  std::array<double, 2> lambda0 = {0.5, 0.5};  // Schmidt eigenvalues, sum 1
  std::array<double, 2> lambda1 = {0.5, 0.5};
  // Lower bound imposed on all four scales during the search. Zero admits
  // the all-fail solution; the interesting question is what survives a
  // strictly positive floor.
  double detection_floor = 1e-3;
  FeasibilityParams params{};
};

// Sum of the probabilities of every forbidden event at these parameters:
// the four error label pairs, and any lone success label paired with the
// other party's failure remainder, for both input states. Remainders are
// clipped to their positive part before use and each clipped (negative)
// eigenvalue adds its square as a penalty. Zero iff the parameters form a
// valid error-free simultaneous-failure POVM pair.
double constraint_residual(const FeasibilityProblem& fp);

// The one-sided-failure protocol's parameters for this lambda0 (Alice's
// balanced projectors at scale 1, Bob's conclusive directions at their
// physical scale). Violates only the simultaneous-failure requirement:
// the residual equals 2*(lambda00 - lambda01) and stems entirely from
// Bob's remainder firing alongside Alice's success labels.
FeasibilityParams protocol_plugin_params(const std::array<double, 2>& lambda0);

// Same frames with all four scales pinned to `floor`. Deterministic start
// of the search's first restart; residual is Theta(floor^2).
FeasibilityParams floored_frame_params(const std::array<double, 2>& lambda0,
                                       double floor);

struct SearchResult {
  double best_residual = 0.0;
  FeasibilityProblem best;  // problem data with the arg-min parameters
  int best_restart = -1;
  int restarts = 0;
  int iterations = 0;
};

// Random-restart greedy descent over the parameter blocks (each direction
// vector, both scale pairs) with a geometrically shrinking perturbation.
// Restart k draws from the stream (seed, k); restart 0 starts from
// floored_frame_params, the rest from random frames and scales. The result
// is the lowest residual across restarts, ties going to the lowest restart
// index, so the outcome is independent of thread count.
//
// Preconditions: all four lambda entries strictly positive (degenerate
// pairs are rejected; they admit one-sided zero-residual constructions and
// are exercised directly through constraint_residual), each pair summing
// to 1, detection_floor in [0, 1), restarts >= 1, iterations >= 1.
SearchResult infeasibility_search(const std::array<double, 2>& lambda0,
                                  const std::array<double, 2>& lambda1,
                                  double detection_floor, int restarts,
                                  int iterations, uint64_t seed);

}  // namespace loccusd
