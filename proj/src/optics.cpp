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

#include "loccusd/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace loccusd {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double OpticalState::norm() const {
  double sum = 0.0;
  for (const cx& a : amps) sum += std::norm(a);
  return std::sqrt(sum);
}

double OpticalState::path_prob(Path path) const {
  return std::norm(at(path, Pol::kH)) + std::norm(at(path, Pol::kV));
}

OpticalState inject(const Ket& polarization, Path path) {
  if (polarization.total_dim() != 2)
    throw std::invalid_argument("inject: polarization state must be a qubit");
  OpticalState state;
  state.at(path, Pol::kH) = polarization.amps[0];
  state.at(path, Pol::kV) = polarization.amps[1];
  return state;
}

OpticalElement OpticalElement::pbs(Path in, Path h_out, Path v_out, double axis) {
  if (h_out != in && v_out != in)
    throw std::invalid_argument("pbs: one output must stay in the input path");
  OpticalElement e;
  e.kind = Kind::kPbs;
  e.pbs_in = in;
  e.pbs_h_out = h_out;
  e.pbs_v_out = v_out;
  e.axis = axis;
  return e;
}

OpticalElement OpticalElement::bs(Path p, Path q, double t) {
  if (p == q) throw std::invalid_argument("bs: paths must differ");
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("bs: transmissivity must be in [0, 1]");
  OpticalElement e;
  e.kind = Kind::kBs;
  e.bs_p = p;
  e.bs_q = q;
  e.t = t;
  return e;
}

OpticalState apply(const OpticalElement& element, const OpticalState& state) {
  OpticalState out = state;
  if (element.kind == OpticalElement::Kind::kBs) {
    const double t = element.t;
    const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (Pol pol : {Pol::kH, Pol::kV}) {
      const cx ap = state.at(element.bs_p, pol);
      const cx aq = state.at(element.bs_q, pol);
      out.at(element.bs_p, pol) = t * ap - r * aq;
      out.at(element.bs_q, pol) = r * ap + t * aq;
    }
    return out;
  }

  // PBS: the axis-aligned component stays straight, the orthogonal component
  // is exchanged between the two coupled paths. Exactly one output port
  // coincides with the input (enforced at construction); the exchanged
  // polarization is the one leaving the input path.
  const Path p = element.pbs_in;
  const Path q = element.pbs_h_out == p ? element.pbs_v_out : element.pbs_h_out;
  const bool swap_axis_v = element.pbs_h_out == p;
  if (q == p) return out;  // both outputs equal the input: identity

  const double c = std::cos(element.axis);
  const double s = std::sin(element.axis);
  // Rotate both coupled paths into the axis frame.
  cx h[2], v[2];
  const Path paths[2] = {p, q};
  for (int i = 0; i < 2; ++i) {
    const cx ah = state.at(paths[i], Pol::kH);
    const cx av = state.at(paths[i], Pol::kV);
    h[i] = c * ah + s * av;
    v[i] = -s * ah + c * av;
  }
  if (swap_axis_v) {
    std::swap(v[0], v[1]);
  } else {
    std::swap(h[0], h[1]);
  }
  // Rotate back.
  for (int i = 0; i < 2; ++i) {
    out.at(paths[i], Pol::kH) = c * h[i] - s * v[i];
    out.at(paths[i], Pol::kV) = s * h[i] + c * v[i];
  }
  return out;
}

CMatrix circuit_unitary(const std::vector<OpticalElement>& elements) {
  CMatrix u(6, 6);
  for (int col = 0; col < 6; ++col) {
    OpticalState basis;
    basis.amps[static_cast<size_t>(col)] = 1.0;
    for (const OpticalElement& e : elements) basis = apply(e, basis);
    for (int row = 0; row < 6; ++row)
      u.entries[static_cast<size_t>(row * 6 + col)] = basis.amps[static_cast<size_t>(row)];
  }
  return u;
}

std::vector<OpticalElement> bob_circuit(double theta0) {
  if (!(theta0 > 0.0) || theta0 > kPi / 4.0 + kTolAlgebra)
    throw std::domain_error("bob_circuit: theta0 must lie in (0, pi/4]");
  const double t = std::min(1.0, std::tan(theta0));
  return {
      OpticalElement::pbs(Path::kA, Path::kA, Path::kB, 0.0),
      OpticalElement::bs(Path::kA, Path::kC, t),
      OpticalElement::pbs(Path::kA, Path::kA, Path::kB, 0.0),
      OpticalElement::pbs(Path::kA, Path::kA, Path::kB, kPi / 4.0),
  };
}

DetectionProbs run_bob_interferometer(double theta0, const Ket& input) {
  if (!input.is_normalized())
    throw std::invalid_argument("run_bob_interferometer: input must be normalized");
  OpticalState state = inject(input, Path::kA);
  for (const OpticalElement& e : bob_circuit(theta0)) state = apply(e, state);
  DetectionProbs probs;
  probs.plus = state.path_prob(Path::kA);
  probs.minus = state.path_prob(Path::kB);
  probs.fail = state.path_prob(Path::kC);
  return probs;
}

DetectionProbs run_bob_interferometer(double theta0, int psi_index) {
  if (psi_index != 0 && psi_index != 1)
    throw std::domain_error("run_bob_interferometer: psi_index must be 0 or 1");
  const double sign = psi_index == 0 ? 1.0 : -1.0;
  return run_bob_interferometer(theta0,
                                Ket::qubit(std::cos(theta0), sign * std::sin(theta0)));
}

}  // namespace loccusd
