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

#pragma once

#include <functional>

#include "coherentia/linalg.hpp"

namespace coherentia {

struct NelderMeadOptions {
  int max_iterations = 5000;
  /// Stop once max - min over the simplex vertices falls below this.
  double value_spread_tol = 1e-9;
  double initial_step = 0.5;
  /// Extra runs restarted from the incumbent with a halved step; a round that
  /// improves by less than `value_spread_tol` ends the polishing early.
  int polish_rounds = 2;
};

struct NelderMeadResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(const RealVector&)>;

/// Derivative-free simplex minimization with dimension-adaptive coefficients
/// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink 1 - 1/n).
/// Non-finite objective values are treated as +infinity.
NelderMeadResult nelder_mead(const Objective& f, const RealVector& x0, const NelderMeadOptions& opts = {});

}  // namespace coherentia
