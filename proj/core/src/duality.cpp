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

#include "coherentia/duality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "coherentia/error.hpp"

namespace coherentia {

namespace {

constexpr double kMinGramEigenvalue = 1e-6;
constexpr int kStartAttempts = 64;

double resolve_normalization(const std::optional<double>& n) {
  if (n) {
    if (!(*n > 0.0)) throw ValidationError("duality: normalization must be positive");
    return *n;
  }
  return NormalizationCache::process_default().get(kSlits, 2);
}

// Runs body(0..count-1) on up to `threads` workers; the first exception wins.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

DualityPoint evaluate(const InterferometerConfig& cfg, const OptimizerConfig& inner, double normalization,
                      std::optional<FreeStateParams>* warm) {
  const MeasureResult c = ctr(InterferometerConfig::controlled_basis(), system_state(cfg), normalization, inner,
                              warm ? *warm : std::nullopt);
  if (warm) *warm = std::get<FreeStateParams>(c.minimizer);
  const PathDistinguishability pd = distinguishability(cfg);
  DualityPoint p;
  p.ctr_value = c.value;
  p.distinguishability = pd.distinguishability;
  p.gamma0 = pd.gamma0;
  p.discard_probability = pd.discard_probability;
  p.degenerate = pd.degenerate;
  p.inner_converged = c.trace.converged;
  p.value = p.ctr_value + p.distinguishability;
  return p;
}

double min_gram_eigenvalue(const std::array<StateVector, kSlits>& d) {
  ComplexMatrix cols(kSlits, kSlits);
  for (Index i = 0; i < kSlits; ++i) cols.col(i) = d[static_cast<std::size_t>(i)].amplitudes();
  return hermitian_eigenvalues(cols.adjoint() * cols)[0];
}

}  // namespace

DualityPoint objective(const InterferometerConfig& cfg, const OptimizerConfig& inner, double normalization) {
  if (!(normalization > 0.0)) throw ValidationError("objective: normalization must be positive");
  return evaluate(cfg, inner, normalization, nullptr);
}

std::optional<InterferometerConfig> decode_chart(const RealVector& x, Parametrization par) {
  if (x.size() != kChartSize) throw ValidationError("decode_chart: expected 16 coordinates");
  if (!x.allFinite()) return std::nullopt;
  const double im = par == Parametrization::kFullComplex ? 1.0 : 0.0;

  std::array<Complex, kSlits> amps{};
  double norm2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    amps[i] = std::abs(x[static_cast<Index>(i)]);
    norm2 += std::norm(amps[i]);
  }
  if (!(norm2 > 1e-300)) return std::nullopt;
  for (auto& a : amps) a /= std::sqrt(norm2);

  ComplexMatrix r = ComplexMatrix::Zero(kSlits, kSlits);
  r(0, 0) = 1.0;
  r(0, 1) = x[4];
  r(1, 1) = std::abs(x[5]);
  r(0, 2) = x[6];
  r(1, 2) = Complex(x[7], im * x[8]);
  r(2, 2) = std::abs(x[9]);
  r(0, 3) = x[10];
  r(1, 3) = Complex(x[11], im * x[12]);
  r(2, 3) = Complex(x[13], im * x[14]);
  r(3, 3) = std::abs(x[15]);

  std::array<StateVector, kSlits> dets{StateVector::basis(kSlits, 0), StateVector::basis(kSlits, 0),
                                       StateVector::basis(kSlits, 0), StateVector::basis(kSlits, 0)};
  for (Index j = 0; j < kSlits; ++j) {
    const double n = r.col(j).norm();
    if (!(n > 1e-12)) return std::nullopt;
    dets[static_cast<std::size_t>(j)] = StateVector::normalized(r.col(j));
  }
  if (!(min_gram_eigenvalue(dets) >= kMinGramEigenvalue)) return std::nullopt;
  return InterferometerConfig(amps, std::move(dets));
}

RealVector encode_chart(const InterferometerConfig& cfg) {
  ComplexMatrix e(kSlits, kSlits);
  RealVector x = RealVector::Zero(kChartSize);
  for (Index i = 0; i < kSlits; ++i) {
    const Complex a = cfg.amplitudes()[static_cast<std::size_t>(i)];
    const Complex phase = std::abs(a) > 0.0 ? a / std::abs(a) : Complex(1.0);
    e.col(i) = phase * cfg.detectors()[static_cast<std::size_t>(i)].amplitudes();
    x[i] = std::abs(a);
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(e);
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();

  auto unit = [](Complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0); };
  r.row(0) *= std::conj(unit(r(0, 0)));
  for (Index j = 1; j < kSlits; ++j) r.col(j) *= std::conj(unit(r(0, j)));
  for (Index k = 1; k < kSlits; ++k) r.row(k) *= std::conj(unit(r(k, k)));

  x[4] = r(0, 1).real();
  x[5] = r(1, 1).real();
  x[6] = r(0, 2).real();
  x[7] = r(1, 2).real();
  x[8] = r(1, 2).imag();
  x[9] = r(2, 2).real();
  x[10] = r(0, 3).real();
  x[11] = r(1, 3).real();
  x[12] = r(1, 3).imag();
  x[13] = r(2, 3).real();
  x[14] = r(2, 3).imag();
  x[15] = r(3, 3).real();
  return x;
}

DualityOptimum maximize_duality(const DualitySearchConfig& search) {
  if (search.restarts < 1) throw ValidationError("maximize_duality: restarts must be >= 1");
  if (!(search.tolerance > 0.0)) throw ValidationError("maximize_duality: tolerance must be positive");
  const double normalization = resolve_normalization(search.normalization);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Outcome {
    bool accepted = false;
    double search_value = std::numeric_limits<double>::quiet_NaN();
    int evaluations = 0;
    std::optional<InterferometerConfig> cfg;
    DualityPoint point;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(search.restarts));

  parallel_for(search.restarts, search.threads, [&](int k) {
    Outcome& out = outcomes[static_cast<std::size_t>(k)];
    RealVector x0;
    if (static_cast<std::size_t>(k) < search.starts.size()) {
      x0 = encode_chart(search.starts[static_cast<std::size_t>(k)]);
      if (search.parametrization == Parametrization::kRealRestricted) x0[8] = x0[12] = x0[14] = 0.0;
      if (!decode_chart(x0, search.parametrization)) return;
    } else {
      Rng rng(derive_seed(search.master_seed, static_cast<std::uint64_t>(k)));
      std::normal_distribution<double> normal;
      bool found = false;
      for (int attempt = 0; attempt < kStartAttempts && !found; ++attempt) {
        x0 = RealVector(kChartSize);
        for (Index i = 0; i < kChartSize; ++i) x0[i] = normal(rng);
        found = decode_chart(x0, search.parametrization).has_value();
      }
      if (!found) return;
    }

    std::optional<FreeStateParams> warm;
    const Objective f = [&](const RealVector& x) {
      const auto cfg = decode_chart(x, search.parametrization);
      if (!cfg) return std::numeric_limits<double>::infinity();
      return -evaluate(*cfg, search.inner, normalization, &warm).value;
    };
    const NelderMeadResult nm = nelder_mead(f, x0, search.outer);
    out.cfg = decode_chart(nm.x, search.parametrization);
    if (!out.cfg) return;
    out.accepted = true;
    out.search_value = -nm.value;
    out.evaluations = nm.evaluations;
    out.point = evaluate(*out.cfg, search.verify, normalization, nullptr);
  });

  DualityOptimum opt;
  opt.normalization = normalization;
  std::vector<double> accepted;
  for (int k = 0; k < search.restarts; ++k) {
    const Outcome& out = outcomes[static_cast<std::size_t>(k)];
    opt.evaluations += out.evaluations;
    opt.search_values.push_back(out.search_value);
    opt.per_restart_values.push_back(out.accepted ? out.point.value : nan);
    if (!out.accepted) continue;
    accepted.push_back(out.point.value);
    if (opt.best_restart < 0 || out.point.value > opt.best_value) {
      opt.best_restart = k;
      opt.best_value = out.point.value;
      opt.best_config = *out.cfg;
      opt.best_point = out.point;
    }
  }
  if (opt.best_restart < 0) {
    std::ostringstream os;
    os << "maximize_duality: all " << search.restarts << " restarts were rejected (seed " << search.master_seed << ")";
    throw OptimizationError(os.str());
  }
  std::sort(accepted.begin(), accepted.end(), std::greater<>());
  opt.converged = accepted.size() >= 2 && accepted[0] - accepted[1] <= search.tolerance;
  return opt;
}

InterferometerConfig random_config(Rng& rng) {
  const StateVector psi = random_state_vector(kSlits, rng);
  std::array<Complex, kSlits> amps{psi[0], psi[1], psi[2], psi[3]};
  for (;;) {
    std::array<StateVector, kSlits> dets{random_state_vector(kSlits, rng), random_state_vector(kSlits, rng),
                                         random_state_vector(kSlits, rng), random_state_vector(kSlits, rng)};
    if (min_gram_eigenvalue(dets) >= kMinGramEigenvalue) return InterferometerConfig(amps, std::move(dets));
  }
}

CertifyReport certify_bound(const CertifyConfig& cfg) {
  if (cfg.samples < 1) throw ValidationError("certify_bound: samples must be >= 1");
  const double normalization = resolve_normalization(cfg.normalization);

  std::vector<double> values(static_cast<std::size_t>(cfg.samples));
  parallel_for(cfg.samples, cfg.threads, [&](int k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    const InterferometerConfig c = random_config(rng);
    double v = evaluate(c, cfg.inner, normalization, nullptr).value;
    // ctr is a minimum, so a deeper search can only lower an over-estimate.
    if (v > cfg.recheck_above) v = std::min(v, evaluate(c, cfg.recheck, normalization, nullptr).value);
    values[static_cast<std::size_t>(k)] = v;
  });

  CertifyReport report;
  report.samples = cfg.samples;
  report.threshold = cfg.bound + cfg.tolerance;
  for (int k = 0; k < cfg.samples; ++k) {
    const double v = values[static_cast<std::size_t>(k)];
    if (report.argmax < 0 || v > report.max_value) {
      report.max_value = v;
      report.argmax = k;
    }
    if (v > report.threshold) report.violations.push_back({k, v});
  }
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(report.argmax)));
  report.max_config = random_config(rng);
  return report;
}

}  // namespace coherentia
