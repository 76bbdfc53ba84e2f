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
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <tuple>
#include <variant>

#include "coherentia/linalg.hpp"
#include "coherentia/nelder_mead.hpp"
#include "coherentia/resource_theory.hpp"

namespace coherentia {

/// Multi-start settings shared by every inner search in this module.
struct OptimizerConfig {
  int restarts = 32;
  std::uint64_t seed = 7;
  NelderMeadOptions nelder_mead{};
  /// A search counts as converged when its two best restarts agree this closely.
  double agreement_tol = 1e-6;
};

struct OptimizerTrace {
  int iterations = 0;
  int evaluations = 0;
  int restarts = 0;
  bool converged = false;
};

/// A completion B_I^c of an incomplete basis, given as a unitary acting on
/// the canonical complement basis.
class BasisCompletion {
 public:
  BasisCompletion(IncompleteBasis basis, ComplexMatrix completion_unitary);

  const IncompleteBasis& basis() const { return basis_; }
  const ComplexMatrix& completion_unitary() const { return unitary_; }

  /// d x d unitary whose columns are B_I followed by the completion vectors.
  ComplexMatrix full_basis() const;

 private:
  IncompleteBasis basis_;
  ComplexMatrix unitary_;
};

struct MeasureResult {
  double value = 0.0;
  std::variant<FreeStateParams, BasisCompletion> minimizer;
  OptimizerTrace trace;
};

/// min over free states of || rho - rho_I ||_1.
///
/// The free set is searched through a parametrization that is feasible by
/// construction: q = sin^2(t), p_i = u_i^2 / |u|^2 and the complement block
/// L L^dagger / Tr for a lower-triangular L built from (d-n)^2 reals. Restart 0
/// starts from the block pinching of rho (exact for free states); the rest
/// start from Gaussian points drawn from per-restart seeds. `hint`, when given,
/// replaces one random start (used for warm starts in nested searches).
MeasureResult ctr_unnormalized(const IncompleteBasis& basis, const DensityMatrix& rho, const OptimizerConfig& cfg,
                               const std::optional<FreeStateParams>& hint = std::nullopt);

enum class NormSearch { kPure, kMixed };

struct NormFactorConfig {
  int restarts = 6;
  std::uint64_t seed = 11;
  NormSearch search = NormSearch::kPure;
  NelderMeadOptions outer{.max_iterations = 3000, .value_spread_tol = 1e-10, .initial_step = 0.6, .polish_rounds = 2};
  OptimizerConfig inner{.restarts = 3, .seed = 5, .nelder_mead = {}, .agreement_tol = 1e-6};
  /// Outer restarts must agree this closely for the result to count as converged.
  double agreement_tol = 1e-4;
};

struct NormFactorResult {
  double value = 0.0;
  DensityMatrix argmax = DensityMatrix::maximally_mixed(1);
  OptimizerTrace trace;
};

/// Maximum of `ctr_unnormalized` over states of C^d for an n-vector basis.
/// By unitary covariance the maximum does not depend on which B_I is used, so
/// the computational one is searched.
NormFactorResult normalization_factor(Index d, Index n, const NormFactorConfig& cfg = {});

/// Per-process memo of normalization factors, optionally persisted as JSON
/// files in a directory. Entries for (4, 2) that stray from 4/3 by more than
/// 5e-3 are discarded on load and recomputed.
class NormalizationCache {
 public:
  explicit NormalizationCache(std::optional<std::filesystem::path> directory = std::nullopt,
                              NormFactorConfig cfg = {});

  /// Cache rooted at $COHERENTIA_CACHE, else $XDG_CACHE_HOME/coherentia, else
  /// $HOME/.cache/coherentia; memory-only when none is set.
  static NormalizationCache& process_default();

  double get(Index d, Index n);
  /// Records an externally computed factor (memo and, when a directory is set, file).
  void store(Index d, Index n, const NormFactorResult& r);
  const NormFactorConfig& config() const { return cfg_; }
  const std::optional<std::filesystem::path>& directory() const { return dir_; }
  std::filesystem::path file_for(Index d, Index n) const;

 private:
  void write_entry(Index d, Index n, const NormFactorResult& r) const;

  std::optional<std::filesystem::path> dir_;
  NormFactorConfig cfg_;
  std::mutex mu_;
  std::map<std::pair<Index, Index>, double> memo_;
};

/// ctr_unnormalized / normalization.
MeasureResult ctr(const IncompleteBasis& basis, const DensityMatrix& rho, double normalization,
                  const OptimizerConfig& cfg, const std::optional<FreeStateParams>& hint = std::nullopt);
MeasureResult ctr(const IncompleteBasis& basis, const DensityMatrix& rho, const OptimizerConfig& cfg,
                  NormalizationCache& cache = NormalizationCache::process_default());

enum class SeedMeasure { kL1, kRelativeEntropy };

/// Sum of |<b_i|rho|b_j>| over i != j. Columns of `full_basis` must be orthonormal.
double seed_measure_l1(const ComplexMatrix& full_basis, const DensityMatrix& rho);
double seed_measure_l1(std::span<const StateVector> full_basis, const DensityMatrix& rho);

/// S(diag(rho)) - S(rho) in bits, diag taken in `full_basis`.
double seed_measure_relent(const ComplexMatrix& full_basis, const DensityMatrix& rho);
double seed_measure_relent(std::span<const StateVector> full_basis, const DensityMatrix& rho);

/// Von Neumann entropy in bits; eigenvalues <= 0 contribute nothing.
double von_neumann_entropy(const ComplexMatrix& rho);

/// min over completions B_I^c of the seed measure in B_I u B_I^c. Completions
/// are searched as U0 exp(iH) with H Hermitian; restart 0 uses the eigenbasis
/// of the complement block as U0, the others Haar-random U0. When n = d - 1 the
/// completion is unique up to a phase and no search is performed.
MeasureResult minimal_completion_measure(const IncompleteBasis& basis, const DensityMatrix& rho, SeedMeasure seed,
                                         const OptimizerConfig& cfg);

}  // namespace coherentia
