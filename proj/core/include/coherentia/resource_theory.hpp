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
#include <string>
#include <vector>

#include "coherentia/linalg.hpp"
#include "coherentia/random.hpp"

namespace coherentia {

/// A fixed orthonormal set of n < d vectors in C^d together with the
/// projector onto, and a canonical orthonormal basis of, its orthogonal
/// complement.
///
/// The canonical complement basis is computed once at construction (see
/// `complement_basis`), so embeddings of complement-block matrices are
/// reproducible. Block coordinates refer to the unitary frame
/// W = [B_I | canonical complement], i.e. an operator X has block form W^dagger X W.
class IncompleteBasis {
 public:
  explicit IncompleteBasis(std::vector<StateVector> vectors);

  /// {|0>, ..., |n-1>} in C^dim.
  static IncompleteBasis computational(Index dim, Index n);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(vectors_.size()); }
  Index complement_dim() const { return dim_ - size(); }

  const std::vector<StateVector>& vectors() const { return vectors_; }
  const ComplexMatrix& span_columns() const { return span_; }
  const ComplexMatrix& complement_columns() const { return complement_; }
  const ComplexMatrix& complement_projector() const { return complement_projector_; }
  const ComplexMatrix& frame() const { return frame_; }

  ComplexMatrix to_block(const ComplexMatrix& op) const { return frame_.adjoint() * op * frame_; }
  ComplexMatrix from_block(const ComplexMatrix& block) const { return frame_ * block * frame_.adjoint(); }

 private:
  Index dim_;
  std::vector<StateVector> vectors_;
  ComplexMatrix span_;
  ComplexMatrix complement_;
  ComplexMatrix complement_projector_;
  ComplexMatrix frame_;
};

/// Parameters (q, p, rho_{d-n}) of a free state q * sum_i p_i |i><i| (+) (1-q) rho_{d-n}.
struct FreeStateParams {
  FreeStateParams(double q, RealVector p, DensityMatrix complement_block);

  double q;
  RealVector p;
  DensityMatrix complement_block;
};

/// Qubit state (I + a X + b Y + c Z) / 2; rejects |(a, b, c)| > 1.
DensityMatrix bloch_state(double a, double b, double c);

struct Defect {
  std::string what;
  Index row = -1;
  Index col = -1;
  double magnitude = 0.0;
};

struct StructureCheck {
  bool passed = true;
  double max_defect = 0.0;
  std::vector<Defect> defects;

  void record(Defect d, double tol);
};

DensityMatrix make_free_state(const IncompleteBasis& basis, const FreeStateParams& params);

/// Membership test for the free set: no coherence between distinct vectors of
/// B_I and no cross terms between Span(B_I) and its complement. The complement
/// block itself is unconstrained.
StructureCheck is_free_state(const IncompleteBasis& basis, const DensityMatrix& rho, double tol);

/// Kraus representation {K_m} with sum_m K_m^dagger K_m = I (checked to 1e-9).
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops, double tol = 1e-9);

  static KrausChannel identity(Index dim);

  Index dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }

  /// Largest entry of sum_m K_m^dagger K_m - I.
  static double completeness_defect(const std::vector<ComplexMatrix>& ops);

 private:
  Index dim_;
  std::vector<ComplexMatrix> ops_;
};

/// Kraus operators block diagonal over Span(B_I) (+) complement, with the
/// Span(B_I) blocks mapping every |i><i| to a diagonal operator.
StructureCheck verify_class1(const IncompleteBasis& basis, const KrausChannel& channel, double tol);

/// Kraus operators [[0, 0], [R_m, Q_m]] with sum R^dagger R = I_n and sum Q^dagger Q = I_{d-n}.
StructureCheck verify_class2(const IncompleteBasis& basis, const KrausChannel& channel, double tol);

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

FreeStateParams random_free_state_params(const IncompleteBasis& basis, Rng& rng);
DensityMatrix random_free_state(const IncompleteBasis& basis, Rng& rng);
DensityMatrix random_free_state(const IncompleteBasis& basis, std::uint64_t seed);

/// Class-1 draw: P_m = Pi_m diag(sqrt(w_m) e^{i phi_m}) with random permutations
/// Pi_m and column weights w_m summing to one over m; Q_m are row blocks of a
/// Haar isometry.
KrausChannel random_channel_class1(const IncompleteBasis& basis, int num_kraus, std::uint64_t seed);

/// Class-2 draw: the lower block rows [R_m Q_m] are row blocks of a Haar
/// isometry of size (num_kraus (d-n)) x d. Requires num_kraus (d-n) >= d,
/// since a single such operator has rank at most d - n.
KrausChannel random_channel_class2(const IncompleteBasis& basis, int num_kraus, std::uint64_t seed);

}  // namespace coherentia
