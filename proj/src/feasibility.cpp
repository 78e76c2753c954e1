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

#include "loccusd/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace loccusd {
namespace {

// Hermitian 2x2 effect: [[p, b], [conj(b), q]] with p, q real.
struct Eff {
  double p = 0.0;
  double q = 0.0;
  cx b = 0.0;
};

Eff rank_one(double scale, const std::array<cx, 2>& v) {
  const double s2 = scale * scale;
  return {s2 * std::norm(v[0]), s2 * std::norm(v[1]), s2 * v[0] * std::conj(v[1])};
}

Eff remainder_of(const Eff& e0, const Eff& e1) {
  return {1.0 - e0.p - e1.p, 1.0 - e0.q - e1.q, -e0.b - e1.b};
}

// Positive part in closed form; adds the square of each discarded negative
// eigenvalue to *penalty.
Eff clip_psd(const Eff& e, double* penalty) {
  const double mean = 0.5 * (e.p + e.q);
  const double diff = 0.5 * (e.p - e.q);
  const double radius = std::sqrt(diff * diff + std::norm(e.b));
  const double lo = mean - radius;
  const double hi = mean + radius;
  if (lo >= 0.0) return e;
  *penalty += lo * lo;
  if (hi <= 0.0) {
    *penalty += hi * hi;
    return Eff{};
  }
  if (std::abs(e.b) == 0.0) {
    // Diagonal: exactly one entry is negative.
    return {std::max(e.p, 0.0), std::max(e.q, 0.0), 0.0};
  }
  // hi > 0 > lo with offdiagonal coupling: keep hi times its eigenprojector,
  // eigenvector (b, hi - p) which is nonzero because b is.
  const cx v0 = e.b;
  const double v1 = hi - e.p;
  const double n2 = std::norm(v0) + v1 * v1;
  return {hi * std::norm(v0) / n2, hi * v1 * v1 / n2, hi * v0 * v1 / n2};
}

// <Psi|E_A (x) E_B|Psi> for |Psi> = a|00> + e|11> with a, e real.
double forbidden_term(const Eff& ea, const Eff& eb, double a, double e) {
  return a * a * ea.p * eb.p + e * e * ea.q * eb.q +
         2.0 * a * e * std::real(ea.b * eb.b);
}

void check_lambda(const std::array<double, 2>& lambda, const char* which) {
  if (lambda[0] < 0.0 || lambda[1] < 0.0 ||
      std::abs(lambda[0] + lambda[1] - 1.0) > kTolAlgebra)
    throw std::domain_error(std::string("feasibility: ") + which +
                            " must be a nonnegative pair summing to 1");
}

void check_unit(const std::array<cx, 2>& v, const char* which) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  if (std::abs(n - 1.0) > 1e-9)
    throw std::domain_error(std::string("feasibility: direction ") + which +
                            " must be unit norm");
}

}  // namespace

double constraint_residual(const FeasibilityProblem& fp) {
  check_lambda(fp.lambda0, "lambda0");
  check_lambda(fp.lambda1, "lambda1");
  const FeasibilityParams& pr = fp.params;
  check_unit(pr.r[0], "r0");
  check_unit(pr.r[1], "r1");
  check_unit(pr.s[0], "s0");
  check_unit(pr.s[1], "s1");
  for (int j = 0; j < 2; ++j)
    if (pr.x[static_cast<size_t>(j)] < 0.0 || pr.y[static_cast<size_t>(j)] < 0.0)
      throw std::domain_error("feasibility: scales must be nonnegative");

  double penalty = 0.0;
  std::array<Eff, 3> ea = {rank_one(pr.x[0], pr.r[0]), rank_one(pr.x[1], pr.r[1]), Eff{}};
  std::array<Eff, 3> eb = {rank_one(pr.y[0], pr.s[0]), rank_one(pr.y[1], pr.s[1]), Eff{}};
  ea[2] = clip_psd(remainder_of(ea[0], ea[1]), &penalty);
  eb[2] = clip_psd(remainder_of(eb[0], eb[1]), &penalty);

  const double a0 = std::sqrt(fp.lambda0[0]);
  const double e0 = std::sqrt(fp.lambda0[1]);
  const double a1 = std::sqrt(fp.lambda1[0]);
  const double e1 = -std::sqrt(fp.lambda1[1]);

  // Label pairs that must never fire, per state: the two error pairs, and
  // any success label alongside the other party's failure remainder (index
  // 2). The pair (2, 2) is the allowed simultaneous failure.
  static constexpr int kForbidden0[6][2] = {{0, 0}, {1, 1}, {2, 0},
                                            {2, 1}, {0, 2}, {1, 2}};
  static constexpr int kForbidden1[6][2] = {{0, 1}, {1, 0}, {2, 0},
                                            {2, 1}, {0, 2}, {1, 2}};
  double total = penalty;
  for (const auto& jl : kForbidden0)
    total += forbidden_term(ea[static_cast<size_t>(jl[0])], eb[static_cast<size_t>(jl[1])],
                            a0, e0);
  for (const auto& jl : kForbidden1)
    total += forbidden_term(ea[static_cast<size_t>(jl[0])], eb[static_cast<size_t>(jl[1])],
                            a1, e1);
  return total;
}

FeasibilityParams protocol_plugin_params(const std::array<double, 2>& lambda0) {
  check_lambda(lambda0, "lambda0");
  if (lambda0[0] < lambda0[1] || lambda0[1] <= 0.0)
    throw std::domain_error(
        "protocol_plugin_params: requires 0 < lambda01 <= lambda00");
  const double c = std::sqrt(lambda0[0]);
  const double s = std::sqrt(lambda0[1]);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  FeasibilityParams p;
  p.r[0] = {inv_sqrt2, inv_sqrt2};
  p.r[1] = {inv_sqrt2, -inv_sqrt2};
  p.s[0] = {s, -c};
  p.s[1] = {s, c};
  p.x = {1.0, 1.0};
  const double y = std::sqrt(0.5 / lambda0[0]);
  p.y = {y, y};
  return p;
}

FeasibilityParams floored_frame_params(const std::array<double, 2>& lambda0,
                                       double floor) {
  check_lambda(lambda0, "lambda0");
  const double c = std::sqrt(lambda0[0]);
  const double s = std::sqrt(lambda0[1]);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  FeasibilityParams p;
  p.r[0] = {inv_sqrt2, inv_sqrt2};
  p.r[1] = {inv_sqrt2, -inv_sqrt2};
  p.s[0] = {s, -c};
  p.s[1] = {s, c};
  p.x = {floor, floor};
  p.y = {floor, floor};
  return p;
}

namespace {

bool renormalize(std::array<cx, 2>* v) {
  const double n = std::sqrt(std::norm((*v)[0]) + std::norm((*v)[1]));
  if (n < 1e-9) return false;
  (*v)[0] /= n;
  (*v)[1] /= n;
  return true;
}

std::array<cx, 2> random_direction(RngStream& rng) {
  std::array<cx, 2> v = {cx(rng.gaussian(), rng.gaussian()),
                         cx(rng.gaussian(), rng.gaussian())};
  if (!renormalize(&v)) v = {1.0, 0.0};
  return v;
}

FeasibilityParams random_params(double floor, RngStream& rng) {
  FeasibilityParams p;
  p.r[0] = random_direction(rng);
  p.r[1] = random_direction(rng);
  p.s[0] = random_direction(rng);
  p.s[1] = random_direction(rng);
  for (int j = 0; j < 2; ++j) {
    p.x[static_cast<size_t>(j)] = floor + (1.0 - floor) * rng.uniform();
    p.y[static_cast<size_t>(j)] = floor + (1.0 - floor) * rng.uniform();
  }
  return p;
}

// One block proposal: perturb a single direction vector or one party's
// scale pair. Draws a fixed number of values per block kind.
FeasibilityParams propose(const FeasibilityParams& p, double sigma, double floor,
                          RngStream& rng) {
  FeasibilityParams q = p;
  const uint64_t block = rng.uniform_below(6);
  auto nudge = [&](std::array<cx, 2>* v) {
    std::array<cx, 2> w = *v;
    w[0] += sigma * cx(rng.gaussian(), rng.gaussian());
    w[1] += sigma * cx(rng.gaussian(), rng.gaussian());
    if (renormalize(&w)) *v = w;
  };
  auto clamp_scale = [&](double val) {
    return std::min(1.0, std::max(floor, val));
  };
  switch (block) {
    case 0: nudge(&q.r[0]); break;
    case 1: nudge(&q.r[1]); break;
    case 2: nudge(&q.s[0]); break;
    case 3: nudge(&q.s[1]); break;
    case 4:
      q.x[0] = clamp_scale(q.x[0] + sigma * rng.gaussian());
      q.x[1] = clamp_scale(q.x[1] + sigma * rng.gaussian());
      break;
    default:
      q.y[0] = clamp_scale(q.y[0] + sigma * rng.gaussian());
      q.y[1] = clamp_scale(q.y[1] + sigma * rng.gaussian());
      break;
  }
  return q;
}

}  // namespace

SearchResult infeasibility_search(const std::array<double, 2>& lambda0,
                                  const std::array<double, 2>& lambda1,
                                  double detection_floor, int restarts,
                                  int iterations, uint64_t seed) {
  check_lambda(lambda0, "lambda0");
  check_lambda(lambda1, "lambda1");
  if (lambda0[0] <= 0.0 || lambda0[1] <= 0.0 || lambda1[0] <= 0.0 ||
      lambda1[1] <= 0.0)
    throw std::domain_error(
        "infeasibility_search: degenerate Schmidt pair (a zero eigenvalue); "
        "both states must be entangled");
  if (detection_floor < 0.0 || detection_floor >= 1.0)
    throw std::domain_error("infeasibility_search: detection_floor must be in [0, 1)");
  if (restarts < 1 || iterations < 1)
    throw std::domain_error("infeasibility_search: restarts and iterations must be >= 1");

  FeasibilityProblem base;
  base.lambda0 = lambda0;
  base.lambda1 = lambda1;
  base.detection_floor = detection_floor;

  // sigma shrinks geometrically from 0.5 to 1e-4 over the iteration budget.
  const double sigma_hi = 0.5;
  const double sigma_ratio = 2e-4;
  std::vector<double> residuals(static_cast<size_t>(restarts));
  std::vector<FeasibilityParams> winners(static_cast<size_t>(restarts));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 0; k < restarts; ++k) {
    RngStream rng(seed, static_cast<uint64_t>(k));
    FeasibilityParams p = k == 0 ? floored_frame_params(lambda0, detection_floor)
                                 : random_params(detection_floor, rng);
    FeasibilityProblem fp = base;
    fp.params = p;
    double cur = constraint_residual(fp);
    for (int t = 0; t < iterations; ++t) {
      const double frac =
          iterations > 1 ? static_cast<double>(t) / static_cast<double>(iterations - 1) : 1.0;
      const double sigma = sigma_hi * std::pow(sigma_ratio, frac);
      fp.params = propose(p, sigma, detection_floor, rng);
      const double res = constraint_residual(fp);
      if (res < cur) {
        cur = res;
        p = fp.params;
      }
    }
    residuals[static_cast<size_t>(k)] = cur;
    winners[static_cast<size_t>(k)] = p;
  }

  SearchResult out;
  out.restarts = restarts;
  out.iterations = iterations;
  out.best = base;
  out.best_residual = residuals[0];
  out.best_restart = 0;
  for (int k = 1; k < restarts; ++k) {
    if (residuals[static_cast<size_t>(k)] < out.best_residual) {
      out.best_residual = residuals[static_cast<size_t>(k)];
      out.best_restart = k;
    }
  }
  out.best.params = winners[static_cast<size_t>(out.best_restart)];
  return out;
}

}  // namespace loccusd
