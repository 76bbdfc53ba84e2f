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

#include "coherentia/resource_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "coherentia/error.hpp"

namespace coherentia {

IncompleteBasis::IncompleteBasis(std::vector<StateVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw ValidationError("incomplete basis: needs at least one vector");
  dim_ = vectors_.front().dim();
  const Index n = size();
  if (n >= dim_) {
    std::ostringstream os;
    os << "incomplete basis: " << n << " vectors in C^" << dim_ << " do not leave a complement";
    throw ValidationError(os.str());
  }
  span_.resize(dim_, n);
  for (Index k = 0; k < n; ++k) {
    const auto& v = vectors_[static_cast<std::size_t>(k)];
    if (v.dim() != dim_) throw ValidationError("incomplete basis: vectors have mixed dimensions");
    span_.col(k) = v.amplitudes();
  }
  const ComplexMatrix gram = span_.adjoint() * span_;
  const double defect = max_abs(gram - ComplexMatrix::Identity(n, n));
  if (defect > kStateTolerance) {
    std::ostringstream os;
    os << "incomplete basis: vectors are not orthonormal (Gram defect " << defect << ")";
    throw ValidationError(os.str());
  }
  complement_projector_ = ComplexMatrix::Identity(dim_, dim_) - span_ * span_.adjoint();
  complement_ = complement_basis(span_);
  frame_.resize(dim_, dim_);
  frame_ << span_, complement_;
}

IncompleteBasis IncompleteBasis::computational(Index dim, Index n) {
  if (n < 1 || n >= dim) throw ValidationError("incomplete basis: need 1 <= n < dim");
  std::vector<StateVector> vs;
  for (Index k = 0; k < n; ++k) vs.push_back(StateVector::basis(dim, k));
  return IncompleteBasis(std::move(vs));
}

FreeStateParams::FreeStateParams(double q_, RealVector p_, DensityMatrix block)
    : q(q_), p(std::move(p_)), complement_block(std::move(block)) {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("free-state params: q must lie in [0, 1]");
  if (p.size() == 0) throw ValidationError("free-state params: empty probability vector");
  for (Index i = 0; i < p.size(); ++i) {
    if (!(p[i] >= -kStateTolerance)) {
      std::ostringstream os;
      os << "free-state params: p[" << i << "] = " << p[i] << " is negative";
      throw ValidationError(os.str());
    }
  }
  if (std::abs(p.sum() - 1.0) > kStateTolerance) {
    throw ValidationError("free-state params: probabilities do not sum to 1");
  }
}

DensityMatrix bloch_state(double a, double b, double c) {
  if (a * a + b * b + c * c > 1.0 + kStateTolerance) throw ValidationError("bloch_state: |r| exceeds 1");
  ComplexMatrix m(2, 2);
  m << Complex(1.0 + c, 0.0), Complex(a, -b), Complex(a, b), Complex(1.0 - c, 0.0);
  return DensityMatrix(0.5 * m);
}

void StructureCheck::record(Defect d, double tol) {
  max_defect = std::max(max_defect, d.magnitude);
  if (d.magnitude > tol) {
    passed = false;
    defects.push_back(std::move(d));
  }
}

DensityMatrix make_free_state(const IncompleteBasis& basis, const FreeStateParams& params) {
  const Index n = basis.size();
  const Index m = basis.complement_dim();
  if (params.p.size() != n || params.complement_block.dim() != m) {
    std::ostringstream os;
    os << "make_free_state: parameters sized (" << params.p.size() << ", " << params.complement_block.dim()
       << ") but basis needs (" << n << ", " << m << ")";
    throw ValidationError(os.str());
  }
  ComplexMatrix block = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (Index i = 0; i < n; ++i) block(i, i) = params.q * params.p[i];
  block.bottomRightCorner(m, m) = (1.0 - params.q) * params.complement_block.matrix();
  ComplexMatrix rho = basis.from_block(block);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

StructureCheck is_free_state(const IncompleteBasis& basis, const DensityMatrix& rho, double tol) {
  if (!(tol > 0.0)) throw ValidationError("is_free_state: tolerance must be positive");
  if (rho.dim() != basis.dim()) throw ValidationError("is_free_state: state and basis dimensions differ");
  const Index n = basis.size();
  const ComplexMatrix block = basis.to_block(rho.matrix());
  StructureCheck check;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      check.record({"coherence within B_I", i, j, std::abs(block(i, j))}, tol);
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index k = n; k < basis.dim(); ++k) {
      check.record({"cross term between Span(B_I) and its complement", i, k, std::abs(block(i, k))}, tol);
    }
  }
  return check;
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops, double tol) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw ValidationError("kraus channel: no Kraus operators");
  dim_ = ops_.front().rows();
  for (std::size_t m = 0; m < ops_.size(); ++m) {
    if (ops_[m].rows() != dim_ || ops_[m].cols() != dim_) {
      std::ostringstream os;
      os << "kraus channel: operator " << m << " is " << ops_[m].rows() << "x" << ops_[m].cols()
         << ", expected " << dim_ << "x" << dim_;
      throw ValidationError(os.str());
    }
  }
  const double defect = completeness_defect(ops_);
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "kraus channel: completeness defect " << defect << " exceeds " << tol;
    throw ValidationError(os.str());
  }
}

KrausChannel KrausChannel::identity(Index dim) { return KrausChannel({ComplexMatrix::Identity(dim, dim)}); }

double KrausChannel::completeness_defect(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) return std::numeric_limits<double>::infinity();
  const Index d = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops) sum += k.adjoint() * k;
  return max_abs(sum - ComplexMatrix::Identity(d, d));
}

namespace {

void require_same_dim(const IncompleteBasis& basis, const KrausChannel& channel, const char* who) {
  if (basis.dim() != channel.dim()) {
    std::ostringstream os;
    os << who << ": basis dimension " << basis.dim() << " differs from channel dimension " << channel.dim();
    throw ValidationError(os.str());
  }
}

double identity_defect(const ComplexMatrix& sum) {
  return max_abs(sum - ComplexMatrix::Identity(sum.rows(), sum.cols()));
}

}  // namespace

StructureCheck verify_class1(const IncompleteBasis& basis, const KrausChannel& channel, double tol) {
  require_same_dim(basis, channel, "verify_class1");
  const Index n = basis.size();
  const Index m = basis.complement_dim();
  StructureCheck check;
  ComplexMatrix p_sum = ComplexMatrix::Zero(n, n);
  ComplexMatrix q_sum = ComplexMatrix::Zero(m, m);
  std::vector<ComplexMatrix> p_blocks;
  const auto& ops = channel.kraus_ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const ComplexMatrix b = basis.to_block(ops[k]);
    const Index idx = static_cast<Index>(k);
    check.record({"K_" + std::to_string(k) + " upper-right block", idx, -1, max_abs(b.topRightCorner(n, m))}, tol);
    check.record({"K_" + std::to_string(k) + " lower-left block", idx, -1, max_abs(b.bottomLeftCorner(m, n))}, tol);
    const ComplexMatrix p = b.topLeftCorner(n, n);
    const ComplexMatrix q = b.bottomRightCorner(m, m);
    p_sum += p.adjoint() * p;
    q_sum += q.adjoint() * q;
    p_blocks.push_back(p);
  }
  check.record({"sum P^dagger P - I_n", -1, -1, identity_defect(p_sum)}, tol);
  check.record({"sum Q^dagger Q - I_(d-n)", -1, -1, identity_defect(q_sum)}, tol);
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix image = ComplexMatrix::Zero(n, n);
    for (const auto& p : p_blocks) image += p.col(i) * p.col(i).adjoint();
    double off = 0.0;
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c)
        if (r != c) off = std::max(off, std::abs(image(r, c)));
    check.record({"P-blocks map |" + std::to_string(i) + "><" + std::to_string(i) + "| off-diagonal", i, i, off}, tol);
  }
  return check;
}

StructureCheck verify_class2(const IncompleteBasis& basis, const KrausChannel& channel, double tol) {
  require_same_dim(basis, channel, "verify_class2");
  const Index n = basis.size();
  const Index m = basis.complement_dim();
  StructureCheck check;
  ComplexMatrix r_sum = ComplexMatrix::Zero(n, n);
  ComplexMatrix q_sum = ComplexMatrix::Zero(m, m);
  const auto& ops = channel.kraus_ops();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const ComplexMatrix b = basis.to_block(ops[k]);
    const Index idx = static_cast<Index>(k);
    check.record({"K_" + std::to_string(k) + " upper-left block", idx, -1, max_abs(b.topLeftCorner(n, n))}, tol);
    check.record({"K_" + std::to_string(k) + " upper-right block", idx, -1, max_abs(b.topRightCorner(n, m))}, tol);
    const ComplexMatrix r = b.bottomLeftCorner(m, n);
    const ComplexMatrix q = b.bottomRightCorner(m, m);
    r_sum += r.adjoint() * r;
    q_sum += q.adjoint() * q;
  }
  check.record({"sum R^dagger R - I_n", -1, -1, identity_defect(r_sum)}, tol);
  check.record({"sum Q^dagger Q - I_(d-n)", -1, -1, identity_defect(q_sum)}, tol);
  return check;
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) throw ValidationError("apply_channel: channel and state dimensions differ");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : channel.kraus_ops()) out += k * rho.matrix() * k.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

FreeStateParams random_free_state_params(const IncompleteBasis& basis, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double q = unif(rng);
  RealVector p = random_simplex_point(basis.size(), rng);
  DensityMatrix block = random_density_matrix(basis.complement_dim(), rng);
  return FreeStateParams(q, std::move(p), std::move(block));
}

DensityMatrix random_free_state(const IncompleteBasis& basis, Rng& rng) {
  return make_free_state(basis, random_free_state_params(basis, rng));
}

DensityMatrix random_free_state(const IncompleteBasis& basis, std::uint64_t seed) {
  Rng rng(seed);
  return random_free_state(basis, rng);
}

KrausChannel random_channel_class1(const IncompleteBasis& basis, int num_kraus, std::uint64_t seed) {
  if (num_kraus < 1) throw ValidationError("random_channel_class1: num_kraus must be >= 1");
  Rng rng(seed);
  const Index n = basis.size();
  const Index m = basis.complement_dim();
  const auto count = static_cast<std::size_t>(num_kraus);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  // weights[k](j): share of input |j> carried by P_k; columns sum to one.
  std::vector<RealVector> weights(count, RealVector(n));
  for (Index j = 0; j < n; ++j) {
    const RealVector w = random_simplex_point(num_kraus, rng);
    for (std::size_t k = 0; k < count; ++k) weights[k][j] = w[static_cast<Index>(k)];
  }
  const ComplexMatrix q_iso = haar_isometry(static_cast<Index>(num_kraus) * m, m, rng);

  std::vector<ComplexMatrix> ops;
  ops.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
      p(perm[static_cast<std::size_t>(j)], j) = std::sqrt(weights[k][j]) * std::polar(1.0, angle(rng));
    }
    ComplexMatrix block = ComplexMatrix::Zero(basis.dim(), basis.dim());
    block.topLeftCorner(n, n) = p;
    block.bottomRightCorner(m, m) = q_iso.middleRows(static_cast<Index>(k) * m, m);
    ops.push_back(basis.from_block(block));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel_class2(const IncompleteBasis& basis, int num_kraus, std::uint64_t seed) {
  const Index d = basis.dim();
  const Index m = basis.complement_dim();
  if (num_kraus < 1 || static_cast<Index>(num_kraus) * m < d) {
    std::ostringstream os;
    os << "random_channel_class2: need num_kraus * (d - n) >= d, i.e. num_kraus >= " << (d + m - 1) / m;
    throw ValidationError(os.str());
  }
  Rng rng(seed);
  const ComplexMatrix iso = haar_isometry(static_cast<Index>(num_kraus) * m, d, rng);
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < num_kraus; ++k) {
    ComplexMatrix block = ComplexMatrix::Zero(d, d);
    block.bottomRows(m) = iso.middleRows(static_cast<Index>(k) * m, m);
    ops.push_back(basis.from_block(block));
  }
  return KrausChannel(std::move(ops));
}

}  // namespace coherentia
