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
#include <vector>

#include "loccusd/ket.hpp"

namespace loccusd {

// One photon over three spatial paths and two polarizations (|0> = H,
// |1> = V): a six-dimensional mode space.
enum class Path { kA = 0, kB = 1, kC = 2 };
enum class Pol { kH = 0, kV = 1 };

struct OpticalState {
  std::array<cx, 6> amps{};

  static int index(Path path, Pol pol) {
    return 2 * static_cast<int>(path) + static_cast<int>(pol);
  }
  cx& at(Path path, Pol pol) { return amps[static_cast<size_t>(index(path, pol))]; }
  cx at(Path path, Pol pol) const { return amps[static_cast<size_t>(index(path, pol))]; }

  double norm() const;
  // Total detection probability at the given path.
  double path_prob(Path path) const;
};

// Place a single-qubit polarization state into one path.
OpticalState inject(const Ket& polarization, Path path);

// Passive linear elements. Each acts as a unitary on the full mode space.
//
// A polarizing beam splitter routes the polarization component along its
// rotated axis ("H" at axis angle 0) to h_out and the orthogonal component
// to v_out; exactly one of h_out/v_out must equal the input path, and the
// same exchange applies in reverse to the other path, which makes the
// element unitary. A beam splitter couples two paths, polarization blind:
// |p> -> t|p> + r|q>, |q> -> t|q> - r|p>, r = sqrt(1 - t^2), so t = 1 is
// the identity.
struct OpticalElement {
  enum class Kind { kPbs, kBs };
  Kind kind = Kind::kBs;

  // PBS fields.
  Path pbs_in = Path::kA;
  Path pbs_h_out = Path::kA;
  Path pbs_v_out = Path::kB;
  double axis = 0.0;  // radians; 0 keeps H straight through

  // BS fields.
  Path bs_p = Path::kA;
  Path bs_q = Path::kC;
  double t = 1.0;

  static OpticalElement pbs(Path in, Path h_out, Path v_out, double axis);
  static OpticalElement bs(Path p, Path q, double t);
};

// Applies one element; preserves the 2-norm. Throws std::invalid_argument
// for elements violating the constraints above.
OpticalState apply(const OpticalElement& element, const OpticalState& state);

// 6x6 matrix of the element sequence (first element applied first), built by
// acting on basis states; used to certify unitarity.
CMatrix circuit_unitary(const std::vector<OpticalElement>& elements);

// The three-outcome interferometer: split V into a side path, attenuate the
// H arm with a t = tan(theta0) beam splitter toward the failure path,
// recombine, then separate the +-45 degree polarizations.
std::vector<OpticalElement> bob_circuit(double theta0);

// Detector probabilities after bob_circuit. plus (path a) fires only on
// cos|0> + sin|1> inputs, minus (path b) only on cos|0> - sin|1>, fail is
// path c. plus corresponds to conclusive label 1 of the two-party protocol's
// three-outcome measurement and minus to label 0.
struct DetectionProbs {
  double plus = 0.0;
  double minus = 0.0;
  double fail = 0.0;
};

// input must be a normalized single-qubit polarization state.
// theta0 in (0, pi/4]; at the boundary t = 1 and fail = 0.
DetectionProbs run_bob_interferometer(double theta0, const Ket& input);
// Convenience: input = cos(theta0)|0> + (-1)^psi_index sin(theta0)|1>.
DetectionProbs run_bob_interferometer(double theta0, int psi_index);

}  // namespace loccusd
