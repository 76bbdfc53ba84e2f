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

#include <cmath>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "coherentia/error.hpp"
#include "coherentia/interferometer.hpp"
#include "coherentia/measures.hpp"
#include "coherentia/random.hpp"
#include "fixtures.hpp"
#include "grid_oracle.hpp"

namespace coherentia {
namespace {

constexpr double kN42 = 4.0 / 3.0;

// Frozen outputs of tests/support/grid_oracle at final step 1e-4.
constexpr double kOracleMaximal = 1.3333333;
constexpr double kOraclePlus = 1.0;
constexpr double kOracleCross = 1.0;
constexpr double kOracleUniform = 1.2761424;
constexpr double kOracleMixed = 0.32128994;
constexpr double kOracleNorm21 = 1.0;

const IncompleteBasis& b42() {
  static const IncompleteBasis b = IncompleteBasis::computational(4, 2);
  return b;
}

DensityMatrix pure4(double a, double b, double c, double d) {
  ComplexVector v(4);
  v << a, b, c, d;
  return DensityMatrix::pure(StateVector::normalized(v));
}

DensityMatrix fixed_mixed() {
  ComplexMatrix m(4, 4);
  m << 0.4, 0.1, Complex(0.05, 0.02), 0.0,
       0.1, 0.3, 0.0, 0.1,
       Complex(0.05, -0.02), 0.0, 0.2, 0.05,
       0.0, 0.1, 0.05, 0.1;
  return DensityMatrix(m);
}

OptimizerConfig quick(int restarts = 8, std::uint64_t seed = 7) {
  OptimizerConfig c;
  c.restarts = restarts;
  c.seed = seed;
  return c;
}

TEST(CtrUnnormalized, FreeStatesGiveZero) {
  Rng rng(1);
  for (int k = 0; k < 30; ++k) {
    const MeasureResult r = ctr_unnormalized(b42(), random_free_state(b42(), rng), quick(4));
    EXPECT_LE(r.value, 1e-6);
    EXPECT_GE(r.value, 0.0);
  }
}

TEST(CtrUnnormalized, MatchesFrozenOracle) {
  const struct {
    DensityMatrix rho;
    double oracle;
  } cases[] = {{testing::maximal_state_4_2(), kOracleMaximal},
               {pure4(1, 1, 0, 0), kOraclePlus},
               {pure4(1, 0, 1, 0), kOracleCross},
               {pure4(1, 1, 1, 1), kOracleUniform},
               {fixed_mixed(), kOracleMixed}};
  for (const auto& c : cases) {
    const MeasureResult r = ctr_unnormalized(b42(), c.rho, quick(32));
    EXPECT_NEAR(r.value, c.oracle, 1e-3);
    EXPECT_TRUE(r.trace.converged);
  }
}

TEST(CtrUnnormalized, MaximalStateGivesFourThirds) {
  const MeasureResult r = ctr_unnormalized(b42(), testing::maximal_state_4_2(), quick(32));
  EXPECT_NEAR(r.value, kN42, 5e-3);
}

TEST(CtrUnnormalized, CrossBlockCoherenceIsCostly) {
  EXPECT_GT(ctr_unnormalized(b42(), pure4(1, 0, 1, 0), quick()).value, 0.5);
}

TEST(CtrUnnormalized, MinimizerIsFeasibleAndAttainsValue) {
  const DensityMatrix rho = fixed_mixed();
  const MeasureResult r = ctr_unnormalized(b42(), rho, quick());
  const auto& params = std::get<FreeStateParams>(r.minimizer);
  const DensityMatrix sigma = make_free_state(b42(), params);
  EXPECT_TRUE(is_free_state(b42(), sigma, 1e-10).passed);
  EXPECT_NEAR(trace_norm(rho.matrix() - sigma.matrix()), r.value, 1e-9);
}

TEST(CtrUnnormalized, SingleRestartNotConverged) {
  const MeasureResult r = ctr_unnormalized(b42(), fixed_mixed(), quick(1));
  EXPECT_FALSE(r.trace.converged);
  EXPECT_EQ(r.trace.restarts, 1);
}

TEST(CtrUnnormalized, ValidatesInput) {
  EXPECT_THROW(ctr_unnormalized(b42(), DensityMatrix::maximally_mixed(3), quick()), ValidationError);
  EXPECT_THROW(ctr_unnormalized(b42(), fixed_mixed(), quick(0)), ValidationError);
}

TEST(CtrUnnormalized, DeterministicForSeed) {
  const double a = ctr_unnormalized(b42(), fixed_mixed(), quick(6, 3)).value;
  const double b = ctr_unnormalized(b42(), fixed_mixed(), quick(6, 3)).value;
  EXPECT_EQ(a, b);
}

TEST(CtrUnnormalized, LargerDimension) {
  const IncompleteBasis basis = IncompleteBasis::computational(5, 2);
  Rng rng(3);
  EXPECT_LE(ctr_unnormalized(basis, random_free_state(basis, rng), quick(4)).value, 1e-6);
  EXPECT_GT(ctr_unnormalized(basis, random_density_matrix(5, rng), quick(4)).value, 1e-3);
}

TEST(NormalizationFactor, FourTwoIsFourThirds) {
  const NormFactorResult r = normalization_factor(4, 2);
  EXPECT_NEAR(r.value, kN42, 5e-3);
  EXPECT_TRUE(r.trace.converged);
}

TEST(NormalizationFactor, TwoOneMatchesFrozenOracle) {
  EXPECT_NEAR(normalization_factor(2, 1).value, kOracleNorm21, 1e-3);
}

TEST(NormalizationFactor, MixedSearchAgreesWithPure) {
  NormFactorConfig cfg;
  cfg.search = NormSearch::kMixed;
  cfg.restarts = 4;
  EXPECT_NEAR(normalization_factor(4, 2, cfg).value, kN42, 5e-3);
}

TEST(NormalizationFactor, RejectsBadDimensions) {
  EXPECT_THROW(normalization_factor(2, 2), ValidationError);
  EXPECT_THROW(normalization_factor(3, 0), ValidationError);
}

TEST(NormalizationCache, PersistsAndRejectsCorruptEntries) {
  const auto dir = testing::scratch_dir("cache");
  NormFactorConfig cfg;
  cfg.restarts = 2;
  {
    NormalizationCache cache(dir, cfg);
    EXPECT_NEAR(cache.get(4, 2), kN42, 5e-3);
    EXPECT_TRUE(std::filesystem::exists(cache.file_for(4, 2)));
  }
  NormalizationCache reread(dir, cfg);
  std::ofstream(reread.file_for(4, 2)) << R"({"d":4,"n":2,"value":1.5})";
  EXPECT_NEAR(reread.get(4, 2), kN42, 5e-3);  // 1.5 is discarded and recomputed
  NormalizationCache memo(dir, cfg);
  EXPECT_NEAR(memo.get(4, 2), kN42, 5e-3);
  std::filesystem::remove_all(dir);
}

TEST(Ctr, MaximalStateIsOne) {
  const MeasureResult r = ctr(b42(), testing::maximal_state_4_2(), kN42, quick(32));
  EXPECT_NEAR(r.value, 1.0, 5e-3);
  EXPECT_THROW(ctr(b42(), testing::maximal_state_4_2(), 0.0, quick()), ValidationError);
}

TEST(Ctr, OrthonormalDetectorStateIsIncoherent) {
  const auto cfg = InterferometerConfig::orthonormal({0.5, Complex(0.0, 0.5), -0.5, 0.5});
  EXPECT_LE(ctr(b42(), system_state(cfg), kN42, quick()).value, 1e-6);
}

TEST(Ctr, Faithful) {
  Rng rng(31);
  for (int k = 0; k < 40; ++k) {
    const DensityMatrix free = random_free_state(b42(), rng);
    EXPECT_LE(ctr(b42(), free, kN42, quick(4)).value, 1e-5);
    const DensityMatrix other = random_density_matrix(4, rng);
    ASSERT_FALSE(is_free_state(b42(), other, 1e-6).passed);
    EXPECT_GE(ctr(b42(), other, kN42, quick(4)).value, 1e-4);
  }
}

TEST(Ctr, MonotoneUnderFreeChannels) {
  Rng rng(41);
  for (std::uint64_t k = 0; k < 40; ++k) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    const double before = ctr(b42(), rho, kN42, quick(8)).value;
    const auto c1 = random_channel_class1(b42(), 2, k);
    const auto c2 = random_channel_class2(b42(), 2, k);
    EXPECT_LE(ctr(b42(), apply_channel(c1, rho), kN42, quick(8)).value, before + 1e-4);
    EXPECT_LE(ctr(b42(), apply_channel(c2, rho), kN42, quick(8)).value, before + 1e-4);
  }
}

TEST(Ctr, InvariantUnderFreeUnitaries) {
  Rng rng(43);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    u.bottomRightCorner(2, 2) = haar_unitary(2, rng);
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(ctr(b42(), rotated, kN42, quick(8)).value, ctr(b42(), rho, kN42, quick(8)).value, 1e-4);
  }
}

TEST(Ctr, Convex) {
  Rng rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix a = random_density_matrix(4, rng);
    const DensityMatrix b = random_density_matrix(4, rng);
    const double lambda = u(rng);
    const DensityMatrix mix(lambda * a.matrix() + (1.0 - lambda) * b.matrix());
    EXPECT_LE(ctr(b42(), mix, kN42, quick(8)).value,
              lambda * ctr(b42(), a, kN42, quick(8)).value + (1.0 - lambda) * ctr(b42(), b, kN42, quick(8)).value + 1e-4);
  }
}

TEST(SeedMeasures, L1Examples) {
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
  EXPECT_DOUBLE_EQ(seed_measure_l1(id4, DensityMatrix::maximally_mixed(4)), 0.0);
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  EXPECT_NEAR(seed_measure_l1(ComplexMatrix::Identity(2, 2), DensityMatrix::pure(StateVector::normalized(plus))), 1.0, 1e-15);
  ComplexMatrix m = ComplexMatrix::Identity(3, 3) / 3.0;
  m(0, 2) = 0.3;
  m(2, 0) = 0.3;
  EXPECT_NEAR(seed_measure_l1(ComplexMatrix::Identity(3, 3), DensityMatrix(m)), 0.6, 1e-15);
  m(0, 2) = -0.3;
  m(2, 0) = -0.3;
  EXPECT_NEAR(seed_measure_l1(ComplexMatrix::Identity(3, 3), DensityMatrix(m)), 0.6, 1e-15);
}

TEST(SeedMeasures, RelativeEntropyExamples) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  EXPECT_NEAR(seed_measure_relent(id2, DensityMatrix::pure(StateVector::normalized(plus))), 1.0, 1e-12);
  EXPECT_NEAR(seed_measure_relent(id2, DensityMatrix::maximally_mixed(2)), 0.0, 1e-12);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 0.2;
  d(1, 1) = 0.8;
  EXPECT_NEAR(seed_measure_relent(ComplexMatrix::Identity(3, 3), DensityMatrix(d)), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(ComplexMatrix::Identity(4, 4) / 4.0), 2.0, 1e-12);
}

TEST(SeedMeasures, RejectNonOrthonormalBasis) {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  EXPECT_THROW(seed_measure_l1(bad, DensityMatrix::maximally_mixed(2)), ValidationError);
  EXPECT_THROW(seed_measure_relent(bad, DensityMatrix::maximally_mixed(2)), ValidationError);
}

TEST(MinimalCompletion, FreeStatesGiveZero) {
  Rng rng(53);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix free = random_free_state(b42(), rng);
    EXPECT_LE(minimal_completion_measure(b42(), free, SeedMeasure::kL1, quick(4)).value, 1e-6);
    EXPECT_LE(minimal_completion_measure(b42(), free, SeedMeasure::kRelativeEntropy, quick(4)).value, 1e-6);
  }
}

TEST(MinimalCompletion, UniqueCompletionWhenOneVectorMissing) {
  const IncompleteBasis basis = IncompleteBasis::computational(3, 2);
  Rng rng(59);
  const DensityMatrix rho = random_density_matrix(3, rng);
  for (SeedMeasure sm : {SeedMeasure::kL1, SeedMeasure::kRelativeEntropy}) {
    const MeasureResult r = minimal_completion_measure(basis, rho, sm, quick(4));
    const double direct = sm == SeedMeasure::kL1 ? seed_measure_l1(ComplexMatrix::Identity(3, 3), rho)
                                                 : seed_measure_relent(ComplexMatrix::Identity(3, 3), rho);
    EXPECT_NEAR(r.value, direct, 1e-12);
    EXPECT_TRUE(r.trace.converged);
    ComplexMatrix phased = ComplexMatrix::Identity(3, 3);
    phased(2, 2) = std::polar(1.0, 0.7);
    const double rephased = sm == SeedMeasure::kL1 ? seed_measure_l1(phased, rho) : seed_measure_relent(phased, rho);
    EXPECT_NEAR(rephased, direct, 1e-12);
  }
}

TEST(MinimalCompletion, CoherenceInsideSpanIsCompletionIndependent) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.3;
  m(1, 1) = 0.3;
  m(0, 1) = Complex(0.1, 0.15);
  m(1, 0) = std::conj(m(0, 1));
  m(2, 2) = 0.2;
  m(3, 3) = 0.2;
  const DensityMatrix rho(m);
  Rng rng(61);
  for (SeedMeasure sm : {SeedMeasure::kL1, SeedMeasure::kRelativeEntropy}) {
    double lo = 1e9, hi = -1e9;
    for (int k = 0; k < 100; ++k) {
      const BasisCompletion completion(b42(), haar_unitary(2, rng));
      const double v = sm == SeedMeasure::kL1 ? seed_measure_l1(completion.full_basis(), rho)
                                              : seed_measure_relent(completion.full_basis(), rho);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_LT(hi - lo, 1e-8);
    EXPECT_NEAR(minimal_completion_measure(b42(), rho, sm, quick(4)).value, lo, 1e-6);
  }
}

TEST(MinimalCompletion, LowerBoundOnEverySampledCompletion) {
  Rng rng(67);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    for (SeedMeasure sm : {SeedMeasure::kL1, SeedMeasure::kRelativeEntropy}) {
      const double best = minimal_completion_measure(b42(), rho, sm, quick(8)).value;
      for (int s = 0; s < 20; ++s) {
        const BasisCompletion completion(b42(), haar_unitary(2, rng));
        const double v = sm == SeedMeasure::kL1 ? seed_measure_l1(completion.full_basis(), rho)
                                                : seed_measure_relent(completion.full_basis(), rho);
        EXPECT_LE(best, v + 1e-6);
      }
    }
  }
}

TEST(BasisCompletion, ValidatesUnitary) {
  EXPECT_THROW(BasisCompletion(b42(), 2.0 * ComplexMatrix::Identity(2, 2)), ValidationError);
  EXPECT_THROW(BasisCompletion(b42(), ComplexMatrix::Identity(3, 3)), ValidationError);
  const BasisCompletion c(b42(), ComplexMatrix::Identity(2, 2));
  EXPECT_LE(max_abs(c.full_basis().adjoint() * c.full_basis() - ComplexMatrix::Identity(4, 4)), 1e-12);
}

}  // namespace
}  // namespace coherentia
