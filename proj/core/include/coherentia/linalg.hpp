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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace coherentia {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance used for normalization, Hermiticity and trace checks on states.
inline constexpr double kStateTolerance = 1e-10;

/// A normalized pure state. Construction validates the norm; use
/// `StateVector::normalized` to rescale an arbitrary nonzero vector.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes, double tol = kStateTolerance);

  static StateVector normalized(const ComplexVector& v);
  static StateVector basis(Index dim, Index k);

  Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_[i]; }

  /// |v><v|
  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  ComplexVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double tol = kStateTolerance);

  static DensityMatrix pure(const StateVector& v);
  static DensityMatrix maximally_mixed(Index dim);

  /// Explicit repair site: symmetrizes, zeroes negative eigenvalues and
  /// renormalizes. Never applied implicitly by any other operation.
  static DensityMatrix repaired(const ComplexMatrix& m);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

/// Largest entrywise |M - M^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix; rejects inputs whose
/// Hermiticity defect exceeds `tol`.
HermitianEigen eig_hermitian(const ComplexMatrix& m, double tol = kStateTolerance);

/// Eigenvalues only, ascending. No validation: callers guarantee Hermiticity.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Sum of singular values. Hermitian inputs go through the eigenvalue path.
double trace_norm(const ComplexMatrix& m);

/// Trace norm of a matrix known to be Hermitian (no checks).
double trace_norm_hermitian(const ComplexMatrix& m);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kA, kB };

/// Reduced operator of a bipartite operator on C^{dA} (x) C^{dB} (index a*dB + b).
ComplexMatrix partial_trace(const ComplexMatrix& joint, Index dim_a, Index dim_b, Subsystem keep);
DensityMatrix partial_trace(const DensityMatrix& joint, Index dim_a, Index dim_b, Subsystem keep);

/// Rescales by a unit phase so that the first non-negligible entry is real positive.
ComplexVector with_phase_convention(const ComplexVector& v);

/// Number of Gram eigenvalues above `tol`.
Index numerical_rank(std::span<const StateVector> vectors, double tol = 1e-12);

/// Orthonormalizes linearly independent vectors, preserving their span. Each
/// output obeys the phase convention above.
std::vector<StateVector> gram_schmidt(std::span<const StateVector> vectors);

/// Unit vector orthogonal to `dim - 1` linearly independent vectors in C^dim.
StateVector orthogonal_complement_vector(std::span<const StateVector> vectors);

/// Orthonormal basis (as columns) of the orthogonal complement of the span of
/// the orthonormal columns of `columns`. Built by Gram-Schmidt over the columns
/// of the complement projector with largest-residual pivoting (lowest index on
/// ties), so the result is deterministic.
ComplexMatrix complement_basis(const ComplexMatrix& columns);

}  // namespace coherentia
