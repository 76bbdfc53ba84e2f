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

#include "coherentia/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coherentia/error.hpp"

namespace coherentia {

namespace {

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("state vector: dimension must be positive");
  if (!all_finite(amps_)) throw ValidationError("state vector: non-finite amplitude");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    std::ostringstream os;
    os << "state vector: squared norm " << norm2 << " differs from 1 by more than " << tol;
    throw ValidationError(os.str());
  }
}

StateVector StateVector::normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("state vector: cannot normalize a zero or non-finite vector");
  return StateVector(v / n);
}

StateVector StateVector::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw ValidationError("state vector: basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v[k] = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw ValidationError("density matrix: must be square and non-empty");
  }
  if (!all_finite(m_)) throw ValidationError("density matrix: non-finite entry");
  const double herm = hermiticity_defect(m_);
  if (herm > tol) {
    std::ostringstream os;
    os << "density matrix: Hermiticity defect " << herm;
    throw ValidationError(os.str());
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "density matrix: trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  const double min_eig = hermitian_eigenvalues(m_)[0];
  if (min_eig < -tol) {
    std::ostringstream os;
    os << "density matrix: minimum eigenvalue " << min_eig << " below " << -tol;
    throw ValidationError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& v) { return DensityMatrix(v.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::repaired(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols() || !all_finite(m)) {
    throw ValidationError("density matrix repair: input must be square and finite");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector vals = es.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (!(total > 0.0)) throw ValidationError("density matrix repair: no positive spectral weight");
  vals /= total;
  ComplexMatrix out = es.eigenvectors() * vals.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianEigen eig_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw ValidationError("eig_hermitian: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    std::ostringstream os;
    os << "eig_hermitian: Hermiticity defect " << defect << " exceeds " << tol;
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) throw ValidationError("eig_hermitian: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("trace_norm: matrix is not square");
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) <= 1e-14 * scale) {
    return trace_norm_hermitian(0.5 * (m + m.adjoint()));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& joint, Index dim_a, Index dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || joint.rows() != dim_a * dim_b || joint.cols() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace: joint operator is " << joint.rows() << "x" << joint.cols()
       << ", expected " << dim_a * dim_b << "x" << dim_a * dim_b;
    throw ValidationError(os.str());
  }
  if (keep == Subsystem::kA) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        for (Index k = 0; k < dim_b; ++k) out(i, j) += joint(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_b; ++i)
    for (Index j = 0; j < dim_b; ++j)
      for (Index k = 0; k < dim_a; ++k) out(i, j) += joint(k * dim_b + i, k * dim_b + j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& joint, Index dim_a, Index dim_b, Subsystem keep) {
  ComplexMatrix reduced = partial_trace(joint.matrix(), dim_a, dim_b, keep);
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  return DensityMatrix(std::move(reduced));
}

ComplexVector with_phase_convention(const ComplexVector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-9 * scale) return v * (std::conj(v[i]) / mag);
  }
  return v;
}

Index numerical_rank(std::span<const StateVector> vectors, double tol) {
  if (vectors.empty()) return 0;
  const Index dim = vectors.front().dim();
  ComplexMatrix cols(dim, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].dim() != dim) throw ValidationError("numerical_rank: vectors have mixed dimensions");
    cols.col(static_cast<Index>(k)) = vectors[k].amplitudes();
  }
  const RealVector gram_eigs = hermitian_eigenvalues(cols.adjoint() * cols);
  return static_cast<Index>((gram_eigs.array() > tol).count());
}

std::vector<StateVector> gram_schmidt(std::span<const StateVector> vectors) {
  const Index rank = numerical_rank(vectors);
  if (rank < static_cast<Index>(vectors.size())) {
    std::ostringstream os;
    os << "gram_schmidt: input is linearly dependent (Gram rank " << rank << " of "
       << vectors.size() << ")";
    throw ValidationError(os.str());
  }
  std::vector<StateVector> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    ComplexVector w = v.amplitudes();
    // two passes of modified Gram-Schmidt keep the output orthonormal to ~1e-15
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : out) w -= u.amplitudes().dot(w) * u.amplitudes();
    }
    out.push_back(StateVector::normalized(with_phase_convention(w)));
  }
  return out;
}

StateVector orthogonal_complement_vector(std::span<const StateVector> vectors) {
  if (vectors.empty()) throw ValidationError("orthogonal_complement_vector: no input vectors");
  const Index dim = vectors.front().dim();
  if (static_cast<Index>(vectors.size()) != dim - 1) {
    std::ostringstream os;
    os << "orthogonal_complement_vector: need " << dim - 1 << " vectors in C^" << dim << ", got "
       << vectors.size();
    throw ValidationError(os.str());
  }
  const auto ortho = gram_schmidt(vectors);
  ComplexMatrix cols(dim, dim - 1);
  for (Index k = 0; k < dim - 1; ++k) cols.col(k) = ortho[static_cast<std::size_t>(k)].amplitudes();
  return StateVector::normalized(complement_basis(cols).col(0));
}

ComplexMatrix complement_basis(const ComplexMatrix& columns) {
  const Index dim = columns.rows();
  const Index target = dim - columns.cols();
  if (target < 0) throw ValidationError("complement_basis: more columns than dimension");
  const ComplexMatrix projector = ComplexMatrix::Identity(dim, dim) - columns * columns.adjoint();
  ComplexMatrix out(dim, target);
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  for (Index k = 0; k < target; ++k) {
    Index best = -1;
    double best_norm = -1.0;
    ComplexVector best_residual;
    for (Index c = 0; c < dim; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      ComplexVector r = projector.col(c);
      for (int pass = 0; pass < 2; ++pass) {
        for (Index j = 0; j < k; ++j) r -= out.col(j).dot(r) * out.col(j);
      }
      const double n = r.norm();
      if (n > best_norm + 1e-12) {
        best_norm = n;
        best = c;
        best_residual = std::move(r);
      }
    }
    if (best < 0 || best_norm < 1e-8) throw ValidationError("complement_basis: input columns are not orthonormal");
    used[static_cast<std::size_t>(best)] = true;
    ComplexVector w = best_residual / best_norm;
    // project once more onto the complement to wash out residual overlap
    w = projector * w;
    for (Index j = 0; j < k; ++j) w -= out.col(j).dot(w) * out.col(j);
    out.col(k) = with_phase_convention(w.normalized());
  }
  return out;
}

}  // namespace coherentia
