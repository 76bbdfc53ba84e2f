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

#include "coherentia/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coherentia/error.hpp"

namespace coherentia {

namespace {

// Square root of a PSD matrix through its spectrum (negative noise clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()));
  const ComplexVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

InterferometerConfig::InterferometerConfig(std::array<Complex, kSlits> amplitudes,
                                           std::array<StateVector, kSlits> detectors)
    : amps_(amplitudes), detectors_(std::move(detectors)) {
  double norm2 = 0.0;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ValidationError("interferometer: non-finite amplitude");
    norm2 += std::norm(a);
  }
  if (std::abs(norm2 - 1.0) > kStateTolerance) {
    std::ostringstream os;
    os << "interferometer: amplitudes have squared norm " << norm2;
    throw ValidationError(os.str());
  }
  for (Index i = 0; i < kSlits; ++i) {
    if (detectors_[static_cast<std::size_t>(i)].dim() != kSlits) {
      std::ostringstream os;
      os << "interferometer: detector state " << i << " must live in C^4";
      throw ValidationError(os.str());
    }
  }
  const double min_eig = hermitian_eigenvalues(detector_gram())[0];
  if (!(min_eig > 1e-12)) {
    std::ostringstream os;
    os << "interferometer: detector states are linearly dependent (Gram min eigenvalue " << min_eig << ")";
    throw ValidationError(os.str());
  }
}

ComplexMatrix InterferometerConfig::detector_gram() const {
  ComplexMatrix cols(kSlits, kSlits);
  for (Index i = 0; i < kSlits; ++i) cols.col(i) = detectors_[static_cast<std::size_t>(i)].amplitudes();
  return cols.adjoint() * cols;
}

InterferometerConfig InterferometerConfig::orthonormal(std::array<Complex, kSlits> amplitudes) {
  return InterferometerConfig(amplitudes, {StateVector::basis(kSlits, 0), StateVector::basis(kSlits, 1),
                                           StateVector::basis(kSlits, 2), StateVector::basis(kSlits, 3)});
}

const IncompleteBasis& InterferometerConfig::controlled_basis() {
  static const IncompleteBasis basis = IncompleteBasis::computational(kSlits, 2);
  return basis;
}

StateVector joint_state(const InterferometerConfig& cfg) {
  ComplexVector psi = ComplexVector::Zero(kSlits * kSlits);
  for (Index i = 0; i < kSlits; ++i) {
    const auto k = static_cast<std::size_t>(i);
    psi.segment(i * kSlits, kSlits) = cfg.amplitudes()[k] * cfg.detectors()[k].amplitudes();
  }
  return StateVector(std::move(psi), 1e-9);
}

DensityMatrix system_state(const InterferometerConfig& cfg) {
  const ComplexMatrix gram = cfg.detector_gram();
  ComplexMatrix rho(kSlits, kSlits);
  for (Index i = 0; i < kSlits; ++i) {
    for (Index j = 0; j < kSlits; ++j) {
      // <d_j|d_i> = gram(j, i)
      rho(i, j) = cfg.amplitudes()[static_cast<std::size_t>(i)] *
                  std::conj(cfg.amplitudes()[static_cast<std::size_t>(j)]) * gram(j, i);
    }
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix detector_state(const InterferometerConfig& cfg) {
  ComplexMatrix rho = ComplexMatrix::Zero(kSlits, kSlits);
  for (std::size_t i = 0; i < static_cast<std::size_t>(kSlits); ++i) {
    rho += std::norm(cfg.amplitudes()[i]) * cfg.detectors()[i].projector();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

PathPOVM build_povm(const InterferometerConfig& cfg) {
  const auto& d = cfg.detectors();
  const std::array<StateVector, 3> others0{d[1], d[2], d[3]};
  const std::array<StateVector, 3> others1{d[0], d[2], d[3]};
  StateVector u = orthogonal_complement_vector(others0);
  StateVector v = orthogonal_complement_vector(others1);
  const ComplexMatrix pu = u.projector();
  const ComplexMatrix pv = v.projector();
  const double lambda_max = hermitian_eigenvalues(0.5 * (pu + pv + (pu + pv).adjoint()))[kSlits - 1];
  const double c = 1.0 / lambda_max;
  PathPOVM povm{c * pu, c * pv, ComplexMatrix(), c, std::move(u), std::move(v)};
  povm.a_inconclusive = ComplexMatrix::Identity(kSlits, kSlits) - povm.a0 - povm.a1;
  return povm;
}

double uqsd_two_state(double p1, double p2, double overlap) {
  if (!(p1 >= 0.0 && p2 >= 0.0) || std::abs(p1 + p2 - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "uqsd_two_state: (" << p1 << ", " << p2 << ") is not a probability pair";
    throw ValidationError(os.str());
  }
  if (!(overlap >= 0.0 && overlap <= 1.0 + 1e-12)) throw ValidationError("uqsd_two_state: overlap must lie in [0, 1]");
  return std::clamp(1.0 - (std::sqrt(p1 * p2) * overlap + std::sqrt(p2 * p1) * overlap), 0.0, 1.0);
}

double uqsd_n_state_bound(const RealVector& probs, const Eigen::MatrixXd& overlaps) {
  const Index n = probs.size();
  if (n < 2) throw ValidationError("uqsd_n_state_bound: need at least two states");
  if (overlaps.rows() != n || overlaps.cols() != n) throw ValidationError("uqsd_n_state_bound: overlap matrix shape mismatch");
  if ((probs.array() < 0.0).any() || std::abs(probs.sum() - 1.0) > 1e-9) {
    throw ValidationError("uqsd_n_state_bound: probabilities are not on the simplex");
  }
  double s = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) s += std::sqrt(probs[i] * probs[j]) * std::abs(overlaps(i, j));
  return 1.0 - s / static_cast<double>(n - 1);
}

PathDistinguishability distinguishability(const InterferometerConfig& cfg) {
  const PathPOVM povm = build_povm(cfg);
  const DensityMatrix rho_d = detector_state(cfg);
  const auto& amps = cfg.amplitudes();
  const auto& d = cfg.detectors();

  PathDistinguishability out;
  out.discard_probability = std::clamp((povm.a_inconclusive * rho_d.matrix()).trace().real(), 0.0, 1.0);

  const double w0 = std::norm(amps[0]) * std::norm(povm.perp_123.amplitudes().dot(d[0].amplitudes()));
  const double w1 = std::norm(amps[1]) * std::norm(povm.perp_023.amplitudes().dot(d[1].amplitudes()));
  if (!(w0 + w1 > 1e-300)) {
    out.degenerate = true;
    return out;
  }
  out.gamma0 = w0 / (w0 + w1);
  out.gamma1 = w1 / (w0 + w1);
  const double overlap = std::min(1.0, std::abs(povm.perp_123.amplitudes().dot(povm.perp_023.amplitudes())));
  out.dbar = uqsd_two_state(out.gamma0, out.gamma1, overlap);
  out.distinguishability = std::clamp((1.0 - out.discard_probability) * out.dbar, 0.0, 1.0);

  const ComplexMatrix s0 = psd_sqrt(povm.a0);
  const ComplexMatrix s1 = psd_sqrt(povm.a1);
  ComplexMatrix updated = s0 * rho_d.matrix() * s0 + s1 * rho_d.matrix() * s1;
  const double tr = updated.trace().real();
  if (tr > 0.0) out.effective_detector_state = updated / tr;
  return out;
}

}  // namespace coherentia
