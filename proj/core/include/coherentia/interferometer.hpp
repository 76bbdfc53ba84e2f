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

#include <array>

#include "coherentia/linalg.hpp"
#include "coherentia/resource_theory.hpp"

namespace coherentia {

inline constexpr Index kSlits = 4;

/// Four-slit which-path setup: slit amplitudes (alpha, beta, gamma, delta) and
/// the detector states |d_i> reached when the particle passes slit i. Slits 0
/// and 1 are the ones under the observer's control.
class InterferometerConfig {
 public:
  InterferometerConfig(std::array<Complex, kSlits> amplitudes, std::array<StateVector, kSlits> detectors);

  const std::array<Complex, kSlits>& amplitudes() const { return amps_; }
  const std::array<StateVector, kSlits>& detectors() const { return detectors_; }

  /// Detector Gram matrix G(i, j) = <d_i|d_j>.
  ComplexMatrix detector_gram() const;

  /// Orthonormal detectors |d_i> = |i>.
  static InterferometerConfig orthonormal(std::array<Complex, kSlits> amplitudes);

  /// {|0>, |1>} in C^4: the slits under control.
  static const IncompleteBasis& controlled_basis();

 private:
  std::array<Complex, kSlits> amps_;
  std::array<StateVector, kSlits> detectors_;
};

/// sum_i c_i |i> (x) |d_i>, system index major.
StateVector joint_state(const InterferometerConfig& cfg);

/// rho_Q(i, j) = c_i conj(c_j) <d_j|d_i>.
DensityMatrix system_state(const InterferometerConfig& cfg);

/// rho_D = sum_i |c_i|^2 |d_i><d_i|.
DensityMatrix detector_state(const InterferometerConfig& cfg);

/// Three-outcome measurement on the detectors: A0 = c |u><u|, A1 = c |v><v|,
/// A? = I - A0 - A1 with u orthogonal to d1, d2, d3 and v orthogonal to d0, d2, d3.
struct PathPOVM {
  ComplexMatrix a0;
  ComplexMatrix a1;
  ComplexMatrix a_inconclusive;
  double c = 0.0;
  StateVector perp_123;
  StateVector perp_023;
};

/// c is taken as large as positivity of A? allows, 1 / lambda_max(|u><u| + |v><v|),
/// which leaves A? with a zero eigenvalue.
PathPOVM build_povm(const InterferometerConfig& cfg);

/// Ivanovic-Dieks-Peres success probability 1 - 2 sqrt(p1 p2) |<psi1|psi2>|,
/// clamped to [0, 1].
double uqsd_two_state(double p1, double p2, double overlap);

/// 1 - (1/(n-1)) sum_{i != j} sqrt(p_i p_j) |<psi_i|psi_j>|, an upper bound on
/// unambiguous identification of n states. `overlaps` holds the Gram magnitudes.
double uqsd_n_state_bound(const RealVector& probs, const Eigen::MatrixXd& overlaps);

struct PathDistinguishability {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  /// UQSD success between the two post-measurement detector states.
  double dbar = 0.0;
  double discard_probability = 0.0;
  /// (1 - discard_probability) * dbar
  double distinguishability = 0.0;
  /// alpha = beta = 0: gamma0 is 0/0 and D is defined as 0.
  bool degenerate = false;
  /// Effective accessible-detector state (square-root Kraus update, renormalized);
  /// empty when degenerate.
  ComplexMatrix effective_detector_state;
};

PathDistinguishability distinguishability(const InterferometerConfig& cfg);

}  // namespace coherentia
