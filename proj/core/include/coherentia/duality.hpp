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

#include <cstdint>
#include <optional>
#include <vector>

#include "coherentia/interferometer.hpp"
#include "coherentia/measures.hpp"
#include "coherentia/random.hpp"

namespace coherentia {

/// One evaluation of C_tr(rho_Q) + D.
struct DualityPoint {
  double ctr_value = 0.0;
  double distinguishability = 0.0;
  double gamma0 = 0.0;
  double discard_probability = 0.0;
  double value = 0.0;
  bool degenerate = false;
  /// False when the inner ctr restarts disagreed; the value is still the best inner result.
  bool inner_converged = true;
};

/// Normalized trace-distance coherence of rho_Q w.r.t. {|0>, |1>} plus the path
/// distinguishability. `normalization` is the factor for (d, n) = (4, 2).
DualityPoint objective(const InterferometerConfig& cfg, const OptimizerConfig& inner, double normalization);

enum class Parametrization { kFullComplex, kRealRestricted };

/// Gauge-fixed coordinates of a configuration. Slit phases are moved into the
/// detectors and the detector frame is brought to upper-triangular form by a
/// unitary on the detector space plus per-detector phases; none of these
/// change rho_Q (up to a diagonal unitary) or D. Layout (16 reals):
///   [|a0|..|a3|, d1: re0, |1|, d2: re0, re1, im1, |2|, d3: re0, re1, im1, re2, im2, |3|]
/// The real-restricted chart ignores the imaginary slots.
inline constexpr Index kChartSize = 16;
std::optional<InterferometerConfig> decode_chart(const RealVector& x, Parametrization par);
RealVector encode_chart(const InterferometerConfig& cfg);

struct DualitySearchConfig {
  int restarts = 64;
  std::uint64_t master_seed = 42;
  /// Inner ctr settings during the ascent (warm-started from the previous minimizer).
  OptimizerConfig inner{.restarts = 2,
                        .seed = 7,
                        .nelder_mead = {.max_iterations = 5000, .value_spread_tol = 1e-9, .initial_step = 0.3,
                                        .polish_rounds = 1},
                        .agreement_tol = 1e-6};
  /// Inner settings used to re-score each restart's final configuration.
  OptimizerConfig verify{.restarts = 32, .seed = 7, .nelder_mead = {}, .agreement_tol = 1e-6};
  NelderMeadOptions outer{.max_iterations = 1000, .value_spread_tol = 1e-9, .initial_step = 0.4, .polish_rounds = 1};
  Parametrization parametrization = Parametrization::kFullComplex;
  /// Top two restarts must agree this closely for `converged`.
  double tolerance = 5e-4;
  int threads = 1;
  /// Defaults to NormalizationCache::process_default().get(4, 2).
  std::optional<double> normalization;
  /// Optional starting configurations for the first restarts; the rest start
  /// from Gaussian chart points.
  std::vector<InterferometerConfig> starts;
};

struct DualityOptimum {
  double best_value = 0.0;
  int best_restart = -1;
  InterferometerConfig best_config = InterferometerConfig::orthonormal({1.0, 0.0, 0.0, 0.0});
  DualityPoint best_point;
  /// Re-scored values; NaN for rejected restarts.
  std::vector<double> per_restart_values;
  /// Objective values the ascent itself reported (fast inner search).
  std::vector<double> search_values;
  bool converged = false;
  int evaluations = 0;
  double normalization = 0.0;
};

DualityOptimum maximize_duality(const DualitySearchConfig& search);

struct CertifyConfig {
  int samples = 10000;
  std::uint64_t seed = 7;
  OptimizerConfig inner{.restarts = 8, .seed = 7, .nelder_mead = {}, .agreement_tol = 1e-6};
  /// Samples scoring above `recheck_above` are re-scored with this before judging.
  OptimizerConfig recheck{.restarts = 32, .seed = 7, .nelder_mead = {}, .agreement_tol = 1e-6};
  double recheck_above = 1.35;
  double bound = 1.4;
  double tolerance = 5e-3;
  int threads = 1;
  std::optional<double> normalization;
};

struct Violation {
  int sample = 0;
  double value = 0.0;
};

struct CertifyReport {
  int samples = 0;
  double max_value = 0.0;
  int argmax = -1;
  InterferometerConfig max_config = InterferometerConfig::orthonormal({1.0, 0.0, 0.0, 0.0});
  std::vector<Violation> violations;
  double threshold = 0.0;
};

/// Haar amplitudes and Haar detector vectors, resampled until the detector
/// Gram matrix has min eigenvalue >= 1e-6.
InterferometerConfig random_config(Rng& rng);

/// Scores `samples` random configurations; sample k uses seed derive_seed(seed, k).
CertifyReport certify_bound(const CertifyConfig& cfg);

}  // namespace coherentia
