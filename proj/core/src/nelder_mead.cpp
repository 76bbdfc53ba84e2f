// Copyright 2026 The Coherentia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coherentia/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "coherentia/error.hpp"

namespace coherentia {

namespace {

struct Run {
  RealVector x;
  double value;
  int iterations;
  int evaluations;
  bool converged;
};

Run single_run(const Objective& raw, const RealVector& x0, double step, int max_iter, double spread_tol) {
  const Index n = x0.size();
  int evals = 0;
  auto f = [&](const RealVector& x) {
    ++evals;
    const double v = raw(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = n > 1 ? 1.0 + 2.0 / dn : 2.0;
  const double gamma = n > 1 ? 0.75 - 0.5 / dn : 0.5;
  const double delta = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  std::vector<RealVector> simplex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  for (Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i + 1)][i] += step;
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  int iter = 0;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];
    if (values[worst] - values[best] < spread_tol) {
      converged = true;
      break;
    }

    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= dn;

    const RealVector xr = centroid + alpha * (centroid - simplex[worst]);
    const double fr = f(xr);
    if (fr < values[best]) {
      const RealVector xe = centroid + beta * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    if (fr < values[worst]) {
      const RealVector xc = centroid + gamma * (xr - centroid);
      const double fc = f(xc);
      if (fc <= fr) {
        simplex[worst] = xc;
        values[worst] = fc;
        continue;
      }
    } else {
      const RealVector xc = centroid - gamma * (centroid - simplex[worst]);
      const double fc = f(xc);
      if (fc < values[worst]) {
        simplex[worst] = xc;
        values[worst] = fc;
        continue;
      }
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + delta * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
    }
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best_idx = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best_idx], *best_it, iter, evals, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, const RealVector& x0, const NelderMeadOptions& opts) {
  if (x0.size() == 0) throw ValidationError("nelder_mead: empty parameter vector");
  if (opts.max_iterations <= 0 || !(opts.initial_step > 0.0)) {
    throw ValidationError("nelder_mead: max_iterations and initial_step must be positive");
  }
  Run run = single_run(f, x0, opts.initial_step, opts.max_iterations, opts.value_spread_tol);
  NelderMeadResult out{run.x, run.value, run.iterations, run.evaluations, run.converged};
  double step = opts.initial_step;
  for (int round = 0; round < opts.polish_rounds; ++round) {
    step *= 0.5;
    Run again = single_run(f, out.x, step, opts.max_iterations, opts.value_spread_tol);
    out.iterations += again.iterations;
    out.evaluations += again.evaluations;
    const double gain = out.value - again.value;
    if (again.value < out.value) {
      out.x = again.x;
      out.value = again.value;
    }
    out.converged = again.converged;
    if (gain < opts.value_spread_tol) break;
  }
  return out;
}

}  // namespace coherentia
