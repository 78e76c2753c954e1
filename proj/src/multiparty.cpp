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

#include "loccusd/multiparty.hpp"

#include <cmath>
#include <stdexcept>

namespace loccusd {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBranchCutoff = 1e-14;  // max-norm below which a failure element is absent

// w^k for w = exp(2*pi*i/3); k may be negative. Powers come from a fixed
// constant so repeated use cannot accumulate phase drift.
cx omega_pow(int k) {
  static const cx w{-0.5, std::sqrt(3.0) / 2.0};
  switch (((k % 3) + 3) % 3) {
    case 0: return {1.0, 0.0};
    case 1: return w;
    default: return std::conj(w);
  }
}

void check_qubit_spec(const MultiQubitSpec& spec) {
  if (spec.n_parties < 2 || spec.n_parties > kMaxParties)
    throw std::domain_error("MultiQubitSpec: n_parties must be in [2, 12]");
  if (!(spec.theta0 > 0.0) || spec.theta0 > kPi / 4.0 + kTolAlgebra)
    throw std::domain_error("MultiQubitSpec: theta0 must lie in (0, pi/4]");
}

void check_qutrit_spec(const QutritSpec& spec) {
  if (spec.n_parties < 2 || spec.n_parties > kMaxParties)
    throw std::domain_error("QutritSpec: n_parties must be in [2, 12]");
  double sum = 0.0;
  for (const cx& c : spec.coeffs) sum += std::norm(c);
  if (std::abs(sum - 1.0) > kTolAlgebra)
    throw std::domain_error("QutritSpec: coeffs must be normalized");
}

// Shared basis of the projective parties in the qubit protocol.
Ket r_vector(int j) {
  const double inv = 1.0 / std::sqrt(2.0);
  return Ket::qubit(inv, j == 0 ? inv : -inv);
}

struct QubitContext {
  MultiQubitSpec spec;
  std::pair<Ket, Ket> states;
  PovmSet projective;
  PovmSet usd;
};

QubitContext make_qubit_context(const MultiQubitSpec& spec) {
  QubitContext ctx;
  ctx.spec = spec;
  ctx.states = build_nqubit_states(spec);
  for (int j = 0; j < 2; ++j) {
    const Ket r = r_vector(j);
    ctx.projective.elements.push_back({j, outer(r, r)});
  }
  ctx.usd = two_state_usd(collapsed_qubit_state(spec.theta0, 0),
                          collapsed_qubit_state(spec.theta0, 1));
  return ctx;
}

MultiTrialRecord run_qubit_context_trial(const QubitContext& ctx, int sent, RngStream& rng) {
  if (sent != 0 && sent != 1)
    throw std::domain_error("run_nqubit_trial: sent must be 0 or 1");
  MultiTrialRecord rec;
  rec.sent = sent;
  Ket state = sent == 0 ? ctx.states.first : ctx.states.second;
  for (int i = 0; i + 1 < ctx.spec.n_parties; ++i) {
    const MeasurementOutcome out = sample(ctx.projective, state, 0, rng);
    ++rec.tally.counts[static_cast<size_t>(out.label)];
    state = contract_party(out.post_state, 0, r_vector(out.label)).normalized();
  }
  const MeasurementOutcome last = sample(ctx.usd, state, 0, rng);
  rec.tally.usd_result = last.label;
  rec.decoded = last.label == kFail ? kFail : last.label ^ (rec.tally.counts[1] & 1);
  return rec;
}

struct QutritContext {
  QutritSpec spec;
  std::array<Ket, 3> states;
  std::array<Ket, 3> eta;
  PovmSet projective;
  PovmSet usd;
};

QutritContext make_qutrit_context(const QutritSpec& spec) {
  QutritContext ctx;
  ctx.spec = spec;
  ctx.states = build_nqutrit_states(spec);
  ctx.eta = eta_basis();
  for (int m = 0; m < 3; ++m)
    ctx.projective.elements.push_back({m, outer(ctx.eta[static_cast<size_t>(m)],
                                                ctx.eta[static_cast<size_t>(m)])});
  ctx.usd = build_qutrit_usd(spec.coeffs);
  return ctx;
}

int qutrit_decode(int usd_label, const std::array<int, 3>& counts) {
  if (usd_label == kFail) return kFail;
  return ((usd_label - counts[2] + counts[1]) % 3 + 3) % 3;
}

MultiTrialRecord run_qutrit_context_trial(const QutritContext& ctx, int sent, RngStream& rng) {
  if (sent < 0 || sent > 2)
    throw std::domain_error("run_nqutrit_trial: sent must be 0, 1, or 2");
  MultiTrialRecord rec;
  rec.sent = sent;
  Ket state = ctx.states[static_cast<size_t>(sent)];
  for (int i = 0; i + 1 < ctx.spec.n_parties; ++i) {
    const MeasurementOutcome out = sample(ctx.projective, state, 0, rng);
    ++rec.tally.counts[static_cast<size_t>(out.label)];
    state = contract_party(out.post_state, 0, ctx.eta[static_cast<size_t>(out.label)]).normalized();
  }
  const MeasurementOutcome last = sample(ctx.usd, state, 0, rng);
  rec.tally.usd_result = last.label;
  rec.decoded = qutrit_decode(last.label, rec.tally.counts);
  return rec;
}

double average_failure(const PovmSet& usd, const std::vector<Ket>& states) {
  double fail = 0.0;
  for (const Ket& psi : states)
    for (const auto& [label, p] : outcome_probs(usd, psi, 0))
      if (label == kFail) fail += p;
  return fail / static_cast<double>(states.size());
}

}  // namespace

std::pair<Ket, Ket> build_nqubit_states(const MultiQubitSpec& spec) {
  check_qubit_spec(spec);
  const std::vector<int> dims(static_cast<size_t>(spec.n_parties), 2);
  const int total = 1 << spec.n_parties;
  std::vector<cx> amps(static_cast<size_t>(total), cx{0.0, 0.0});
  amps[0] = std::cos(spec.theta0);
  amps[static_cast<size_t>(total - 1)] = std::sin(spec.theta0);
  Ket psi0(dims, amps);
  amps[static_cast<size_t>(total - 1)] = -std::sin(spec.theta0);
  Ket psi1(dims, std::move(amps));
  return {std::move(psi0), std::move(psi1)};
}

std::array<Ket, 3> build_nqutrit_states(const QutritSpec& spec) {
  check_qutrit_spec(spec);
  const std::vector<int> dims(static_cast<size_t>(spec.n_parties), 3);
  int total = 1;
  for (int i = 0; i < spec.n_parties; ++i) total *= 3;
  std::array<Ket, 3> out;
  for (int j = 0; j < 3; ++j) {
    std::vector<cx> amps(static_cast<size_t>(total), cx{0.0, 0.0});
    amps[0] = spec.coeffs[0];
    amps[static_cast<size_t>((total - 1) / 2)] = spec.coeffs[1] * omega_pow(j);
    amps[static_cast<size_t>(total - 1)] = spec.coeffs[2] * omega_pow(-j);
    out[static_cast<size_t>(j)] = Ket(dims, std::move(amps));
  }
  return out;
}

std::array<Ket, 3> eta_basis() {
  const double inv = 1.0 / std::sqrt(3.0);
  std::array<Ket, 3> basis;
  for (int k = 0; k < 3; ++k)
    basis[static_cast<size_t>(k)] =
        Ket::qutrit(inv, inv * omega_pow(k), inv * omega_pow(-k));
  return basis;
}

Ket collapsed_qubit_state(double theta0, int index) {
  const double sign = index % 2 == 0 ? 1.0 : -1.0;
  return Ket::qubit(std::cos(theta0), sign * std::sin(theta0));
}

Ket collapsed_qutrit_state(const std::array<cx, 3>& coeffs, int index) {
  return Ket::qutrit(coeffs[0], coeffs[1] * omega_pow(index), coeffs[2] * omega_pow(-index));
}

PovmSet two_state_usd(const Ket& a, const Ket& b) {
  const int dim = a.total_dim();
  if (b.total_dim() != dim)
    throw std::invalid_argument("two_state_usd: states must have equal dimension");
  if (!a.is_normalized() || !b.is_normalized())
    throw std::invalid_argument("two_state_usd: states must be normalized");
  const cx ab = inner(a, b);
  const double s = std::abs(ab);
  if (s >= 1.0 - kTolDecomp)
    throw std::domain_error("two_state_usd: states are not linearly independent");

  // Element k is the maximal multiple of the projector onto the part of
  // state k orthogonal to the other state: both conclusive rates land on the
  // shared optimum 1 - s.
  auto reject = [dim](const Ket& kept, const Ket& removed, cx overlap) {
    // kept - <removed|kept> removed, normalized; overlap = <removed|kept>.
    Ket w({dim}, kept.amps);
    for (int i = 0; i < dim; ++i) w.amps[static_cast<size_t>(i)] -=
        overlap * removed.amps[static_cast<size_t>(i)];
    return w.normalized();
  };
  const double scale = std::sqrt(1.0 / (1.0 + s));
  const Ket w0 = reject(a, b, std::conj(ab));
  const Ket w1 = reject(b, a, ab);
  PovmSet set;
  set.elements.push_back({0, outer(w0, w0).scaled(scale)});
  set.elements.push_back({1, outer(w1, w1).scaled(scale)});

  CMatrix remainder = CMatrix::identity(dim);
  for (const auto& e : set.elements) remainder = remainder - e.effect();
  if (remainder.max_abs() > kBranchCutoff)
    set.elements.push_back({kFail, hermitian_sqrt(remainder)});

  const ValidationReport report = validate(set);
  if (!report.pass) throw std::logic_error("two_state_usd: constructed set is not a POVM");
  return set;
}

PovmSet build_qutrit_usd(const std::array<cx, 3>& coeffs) {
  double sum = 0.0;
  double min_sq = 1.0;
  for (const cx& c : coeffs) {
    sum += std::norm(c);
    min_sq = std::min(min_sq, std::norm(c));
  }
  if (std::abs(sum - 1.0) > kTolAlgebra)
    throw std::domain_error("build_qutrit_usd: coeffs must be normalized");
  if (min_sq <= 1e-18)
    throw std::domain_error(
        "build_qutrit_usd: zero coefficient makes the symmetric family degenerate");

  // Reciprocal states: <phi_j|psi_k> = 3 delta_jk. The shared scale is the
  // largest one keeping I - sum of success effects positive.
  const double big_s = 1.0 / std::norm(coeffs[0]) + 1.0 / std::norm(coeffs[1]) +
                       1.0 / std::norm(coeffs[2]);
  const double scale = std::sqrt(big_s * min_sq / 3.0);
  PovmSet set;
  for (int j = 0; j < 3; ++j) {
    const Ket phi = Ket::qutrit(1.0 / std::conj(coeffs[0]),
                                omega_pow(j) / std::conj(coeffs[1]),
                                omega_pow(-j) / std::conj(coeffs[2]))
                        .normalized();
    set.elements.push_back({j, outer(phi, phi).scaled(scale)});
  }

  CMatrix remainder = CMatrix::identity(3);
  for (const auto& e : set.elements) remainder = remainder - e.effect();
  if (remainder.max_abs() > kBranchCutoff)
    set.elements.push_back({kFail, hermitian_sqrt(remainder)});

  const ValidationReport report = validate(set);
  if (!report.pass) throw std::logic_error("build_qutrit_usd: constructed set is not a POVM");
  return set;
}

double nqubit_failure_probability(const MultiQubitSpec& spec) {
  check_qubit_spec(spec);
  const PovmSet usd = two_state_usd(collapsed_qubit_state(spec.theta0, 0),
                                    collapsed_qubit_state(spec.theta0, 1));
  return average_failure(
      usd, {collapsed_qubit_state(spec.theta0, 0), collapsed_qubit_state(spec.theta0, 1)});
}

double nqutrit_failure_probability(const QutritSpec& spec) {
  check_qutrit_spec(spec);
  const PovmSet usd = build_qutrit_usd(spec.coeffs);
  return average_failure(usd, {collapsed_qutrit_state(spec.coeffs, 0),
                               collapsed_qutrit_state(spec.coeffs, 1),
                               collapsed_qutrit_state(spec.coeffs, 2)});
}

MultiTrialRecord run_nqubit_trial(const MultiQubitSpec& spec, int sent, RngStream& rng) {
  check_qubit_spec(spec);
  return run_qubit_context_trial(make_qubit_context(spec), sent, rng);
}

MultiTrialRecord run_nqutrit_trial(const QutritSpec& spec, int sent, RngStream& rng) {
  check_qutrit_spec(spec);
  return run_qutrit_context_trial(make_qutrit_context(spec), sent, rng);
}

MultiQubitTables make_nqubit_tables(const MultiQubitSpec& spec) {
  check_qubit_spec(spec);
  const PovmSet usd = two_state_usd(collapsed_qubit_state(spec.theta0, 0),
                                    collapsed_qubit_state(spec.theta0, 1));
  MultiQubitTables tables;
  tables.n_parties = spec.n_parties;
  tables.n_usd = static_cast<int>(usd.elements.size());
  for (int e = 0; e < tables.n_usd; ++e)
    tables.usd_labels[static_cast<size_t>(e)] = usd.elements[static_cast<size_t>(e)].label;
  for (int index = 0; index < 2; ++index) {
    const auto probs = outcome_probs(usd, collapsed_qubit_state(spec.theta0, index), 0);
    for (int e = 0; e < tables.n_usd; ++e)
      tables.p_usd[static_cast<size_t>(index)][static_cast<size_t>(e)] =
          probs[static_cast<size_t>(e)].second;
  }
  return tables;
}

QutritTables make_nqutrit_tables(const QutritSpec& spec) {
  check_qutrit_spec(spec);
  const PovmSet usd = build_qutrit_usd(spec.coeffs);
  QutritTables tables;
  tables.n_parties = spec.n_parties;
  tables.n_usd = static_cast<int>(usd.elements.size());
  for (int e = 0; e < tables.n_usd; ++e)
    tables.usd_labels[static_cast<size_t>(e)] = usd.elements[static_cast<size_t>(e)].label;
  for (int index = 0; index < 3; ++index) {
    const auto probs = outcome_probs(usd, collapsed_qutrit_state(spec.coeffs, index), 0);
    for (int e = 0; e < tables.n_usd; ++e)
      tables.p_usd[static_cast<size_t>(index)][static_cast<size_t>(e)] =
          probs[static_cast<size_t>(e)].second;
  }
  return tables;
}

MultiTrialRecord run_nqubit_trial_fast(const MultiQubitTables& tables, int sent, RngStream& rng) {
  if (sent != 0 && sent != 1)
    throw std::domain_error("run_nqubit_trial_fast: sent must be 0 or 1");
  static constexpr std::array<double, 2> kHalf{0.5, 0.5};
  MultiTrialRecord rec;
  rec.sent = sent;
  for (int i = 0; i + 1 < tables.n_parties; ++i)
    ++rec.tally.counts[static_cast<size_t>(pick_cumulative(kHalf.data(), 2, rng.uniform()))];
  const int collapsed = (sent + rec.tally.counts[1]) & 1;
  const int e = pick_cumulative(tables.p_usd[static_cast<size_t>(collapsed)].data(),
                                tables.n_usd, rng.uniform());
  const int label = tables.usd_labels[static_cast<size_t>(e)];
  rec.tally.usd_result = label;
  rec.decoded = label == kFail ? kFail : label ^ (rec.tally.counts[1] & 1);
  return rec;
}

MultiTrialRecord run_nqutrit_trial_fast(const QutritTables& tables, int sent, RngStream& rng) {
  if (sent < 0 || sent > 2)
    throw std::domain_error("run_nqutrit_trial_fast: sent must be 0, 1, or 2");
  static constexpr std::array<double, 3> kThird{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  MultiTrialRecord rec;
  rec.sent = sent;
  for (int i = 0; i + 1 < tables.n_parties; ++i)
    ++rec.tally.counts[static_cast<size_t>(pick_cumulative(kThird.data(), 3, rng.uniform()))];
  const int collapsed = ((sent + rec.tally.counts[2] - rec.tally.counts[1]) % 3 + 3) % 3;
  const int e = pick_cumulative(tables.p_usd[static_cast<size_t>(collapsed)].data(),
                                tables.n_usd, rng.uniform());
  const int label = tables.usd_labels[static_cast<size_t>(e)];
  rec.tally.usd_result = label;
  rec.decoded = qutrit_decode(label, rec.tally.counts);
  return rec;
}

BatchStats run_nqubit_batch(const MultiQubitSpec& spec, const BatchOptions& options) {
  BatchOptions opts = options;
  opts.n_states = 2;
  if (opts.fast_kernel) {
    const MultiQubitTables tables = make_nqubit_tables(spec);
    return run_batch(opts, [&tables](int sent, RngStream& rng) {
      return run_nqubit_trial_fast(tables, sent, rng).decoded;
    });
  }
  const QubitContext ctx = make_qubit_context(spec);
  return run_batch(opts, [&ctx](int sent, RngStream& rng) {
    return run_qubit_context_trial(ctx, sent, rng).decoded;
  });
}

BatchStats run_nqutrit_batch(const QutritSpec& spec, const BatchOptions& options) {
  BatchOptions opts = options;
  opts.n_states = 3;
  if (opts.fast_kernel) {
    const QutritTables tables = make_nqutrit_tables(spec);
    return run_batch(opts, [&tables](int sent, RngStream& rng) {
      return run_nqutrit_trial_fast(tables, sent, rng).decoded;
    });
  }
  const QutritContext ctx = make_qutrit_context(spec);
  return run_batch(opts, [&ctx](int sent, RngStream& rng) {
    return run_qutrit_context_trial(ctx, sent, rng).decoded;
  });
}

}  // namespace loccusd
