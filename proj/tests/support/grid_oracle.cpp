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

#include "grid_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace coherentia::testing {

namespace {

using C = std::complex<double>;

template <typename M>
double hermitian_trace_norm(const M& m) {
  Eigen::SelfAdjointEigenSolver<M> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double distance(const Eigen::Matrix4cd& rho, const std::array<double, 5>& v) {
  const double q = v[0], p = v[1], a = v[2], b = v[3], c = v[4];
  Eigen::Matrix4cd diff = rho;
  diff(0, 0) -= q * p;
  diff(1, 1) -= q * (1.0 - p);
  const double w = 0.5 * (1.0 - q);
  diff(2, 2) -= w * (1.0 + c);
  diff(3, 3) -= w * (1.0 - c);
  diff(2, 3) -= w * C(a, -b);
  diff(3, 2) -= w * C(a, b);
  return hermitian_trace_norm(diff);
}

}  // namespace

double grid_ctr_4_2(const Eigen::Matrix4cd& rho, double final_step) {
  const std::array<double, 5> lo{0.0, 0.0, -1.0, -1.0, -1.0};
  const std::array<double, 5> hi{1.0, 1.0, 1.0, 1.0, 1.0};
  std::array<double, 5> best{0.5, 0.5, 0.0, 0.0, 0.0};
  double best_value = std::numeric_limits<double>::infinity();

  // Scans the lattice lo + i*step inside best +- half_width; true if the incumbent moved.
  auto scan = [&](double step, double half_width) {
    std::array<std::vector<double>, 5> axes;
    for (std::size_t k = 0; k < 5; ++k) {
      const double from = std::max(lo[k], best[k] - half_width);
      const double to = std::min(hi[k], best[k] + half_width);
      const auto first = static_cast<long>(std::ceil((from - lo[k]) / step - 1e-9));
      const auto last = static_cast<long>(std::floor((to - lo[k]) / step + 1e-9));
      for (long i = first; i <= last; ++i) axes[k].push_back(lo[k] + static_cast<double>(i) * step);
    }
    bool moved = false;
    for (double q : axes[0])
      for (double p : axes[1])
        for (double a : axes[2])
          for (double b : axes[3])
            for (double c : axes[4]) {
              if (a * a + b * b + c * c > 1.0 + 1e-12) continue;
              const std::array<double, 5> v{q, p, a, b, c};
              const double d = distance(rho, v);
              if (d < best_value - 1e-15) {
                best_value = d;
                best = v;
                moved = true;
              }
            }
    return moved;
  };

  scan(0.1, 2.0);
  // Local lattice scans of two steps each way, repeated until the incumbent
  // settles, then the step is halved down to final_step.
  for (double step = 0.05;; step = std::max(step / 2.0, final_step)) {
    for (int round = 0; round < 200 && scan(step, 2.0 * step * (1.0 + 1e-9)); ++round) {
    }
    if (step <= final_step * (1.0 + 1e-9)) break;
  }
  return best_value;
}

double grid_ctr_2_1(const Eigen::Matrix2cd& rho, double step) {
  double best = std::numeric_limits<double>::infinity();
  const auto count = static_cast<long>(std::llround(1.0 / step));
  for (long i = 0; i <= count; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(count);
    Eigen::Matrix2cd diff = rho;
    diff(0, 0) -= q;
    diff(1, 1) -= 1.0 - q;
    best = std::min(best, hermitian_trace_norm(diff));
  }
  return best;
}

double grid_norm_factor_2_1(double step) {
  double best = 0.0;
  const auto n_theta = static_cast<long>(std::llround(std::numbers::pi / step));
  // The diagonal free set is invariant under relative phases, so a few phases suffice.
  const long n_phi = 4;
  for (long i = 0; i <= n_theta; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta);
    for (long j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
      Eigen::Vector2cd psi(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
      best = std::max(best, grid_ctr_2_1(psi * psi.adjoint(), step));
    }
  }
  return best;
}

}  // namespace coherentia::testing
