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

#include "coherentia/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coherentia/error.hpp"
#include "coherentia/random.hpp"

namespace coherentia {

namespace {

constexpr double kFourThirds = 4.0 / 3.0;

void require_dims(const IncompleteBasis& basis, const DensityMatrix& rho, const char* who) {
  if (basis.dim() != rho.dim()) {
    std::ostringstream os;
    os << who << ": state dimension " << rho.dim() << " differs from basis dimension " << basis.dim();
    throw ValidationError(os.str());
  }
}

void require_restarts(const OptimizerConfig& cfg, const char* who) {
  if (cfg.restarts < 1) throw ValidationError(std::string(who) + ": restarts must be >= 1");
}

// Lower-triangular factor with real diagonal from m*m reals, and back.
ComplexMatrix factor_from_reals(const double* x, Index m) {
  ComplexMatrix l = ComplexMatrix::Zero(m, m);
  Index k = 0;
  for (Index i = 0; i < m; ++i) l(i, i) = x[k++];
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < i; ++j) {
      l(i, j) = Complex(x[k], x[k + 1]);
      k += 2;
    }
  }
  return l;
}

void reals_from_factor(const ComplexMatrix& l, double* x) {
  const Index m = l.rows();
  Index k = 0;
  for (Index i = 0; i < m; ++i) x[k++] = l(i, i).real();
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < i; ++j) {
      x[k++] = l(i, j).real();
      x[k++] = l(i, j).imag();
    }
  }
}

// L L^dagger / Tr, or I/m when the factor vanishes.
ComplexMatrix normalized_gram(const ComplexMatrix& l) {
  ComplexMatrix g = l * l.adjoint();
  const double tr = g.trace().real();
  if (!(tr > 1e-300)) return ComplexMatrix::Identity(l.rows(), l.rows()) / static_cast<double>(l.rows());
  g /= tr;
  return g;
}

ComplexMatrix factor_of(const ComplexMatrix& psd) {
  const Index m = psd.rows();
  const ComplexMatrix reg = psd + 1e-14 * ComplexMatrix::Identity(m, m);
  Eigen::LLT<ComplexMatrix> llt(reg);
  if (llt.info() != Eigen::Success) return ComplexMatrix::Identity(m, m);
  return llt.matrixL();
}

// Feasible-by-construction coordinates for the free set of a basis with n
// vectors and an m-dimensional complement: [t, u_0..u_{n-1}, factor(m*m)].
class FreeStateCoordinates {
 public:
  FreeStateCoordinates(Index n, Index m) : n_(n), m_(m) {}

  Index size() const { return 1 + n_ + m_ * m_; }

  void decode(const RealVector& x, double& q, RealVector& p, ComplexMatrix& block) const {
    const double s = std::sin(x[0]);
    q = s * s;
    p = x.segment(1, n_).array().square();
    const double total = p.sum();
    if (total > 1e-300) {
      p /= total;
    } else {
      p.setConstant(1.0 / static_cast<double>(n_));
    }
    block = normalized_gram(factor_from_reals(x.data() + 1 + n_, m_));
  }

  RealVector encode(const FreeStateParams& params) const {
    RealVector x(size());
    x[0] = std::asin(std::sqrt(std::clamp(params.q, 0.0, 1.0)));
    for (Index i = 0; i < n_; ++i) x[1 + i] = std::sqrt(std::max(params.p[i], 0.0));
    reals_from_factor(factor_of(params.complement_block.matrix()), x.data() + 1 + n_);
    return x;
  }

  FreeStateParams params(const RealVector& x) const {
    double q = 0.0;
    RealVector p;
    ComplexMatrix block;
    decode(x, q, p, block);
    block = 0.5 * (block + block.adjoint()).eval();
    return FreeStateParams(q, std::move(p), DensityMatrix::repaired(block));
  }

 private:
  Index n_;
  Index m_;
};

// Block pinching of rho onto the free structure: exact for free states.
FreeStateParams pinched_params(const IncompleteBasis& basis, const ComplexMatrix& block_rho) {
  const Index n = basis.size();
  const Index m = basis.complement_dim();
  RealVector diag = block_rho.topLeftCorner(n, n).diagonal().real().cwiseMax(0.0);
  const double q = std::clamp(diag.sum(), 0.0, 1.0);
  RealVector p = q > 1e-14 ? RealVector(diag / diag.sum()) : RealVector::Constant(n, 1.0 / static_cast<double>(n));
  const ComplexMatrix lower = block_rho.bottomRightCorner(m, m);
  const double lower_tr = lower.trace().real();
  DensityMatrix comp = lower_tr > 1e-14 ? DensityMatrix::repaired(lower) : DensityMatrix::maximally_mixed(m);
  return FreeStateParams(q, std::move(p), std::move(comp));
}

struct RestartOutcome {
  RealVector x;
  double value;
};

OptimizerTrace summarize(std::vector<double> values, int iterations, int evaluations, double agreement_tol) {
  OptimizerTrace trace;
  trace.iterations = iterations;
  trace.evaluations = evaluations;
  trace.restarts = static_cast<int>(values.size());
  std::sort(values.begin(), values.end());
  trace.converged = values.size() >= 2 && values[1] - values[0] <= agreement_tol;
  return trace;
}

ComplexMatrix hermitian_from_reals(const RealVector& x, Index m) {
  ComplexMatrix h = ComplexMatrix::Zero(m, m);
  Index k = 0;
  for (Index i = 0; i < m; ++i) h(i, i) = x[k++];
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < i; ++j) {
      h(i, j) = Complex(x[k], x[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  return h;
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const ComplexVector phases = es.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void require_orthonormal_columns(const ComplexMatrix& b, Index dim, const char* who) {
  if (b.rows() != dim || b.cols() != dim) {
    std::ostringstream os;
    os << who << ": full basis must be " << dim << "x" << dim;
    throw ValidationError(os.str());
  }
  const double defect = max_abs(b.adjoint() * b - ComplexMatrix::Identity(dim, dim));
  if (defect > 1e-9) {
    std::ostringstream os;
    os << who << ": basis is not orthonormal (Gram defect " << defect << ")";
    throw ValidationError(os.str());
  }
}

ComplexMatrix columns_of(std::span<const StateVector> vs) {
  if (vs.empty()) throw ValidationError("seed measure: empty basis");
  ComplexMatrix b(vs.front().dim(), static_cast<Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k].dim() != b.rows()) throw ValidationError("seed measure: basis vectors have mixed dimensions");
    b.col(static_cast<Index>(k)) = vs[k].amplitudes();
  }
  return b;
}

double l1_offdiag(const ComplexMatrix& m) {
  double s = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

double shannon_bits(const RealVector& probs) {
  double s = 0.0;
  for (Index i = 0; i < probs.size(); ++i) {
    const double v = probs[i];
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

}  // namespace

BasisCompletion::BasisCompletion(IncompleteBasis basis, ComplexMatrix completion_unitary)
    : basis_(std::move(basis)), unitary_(std::move(completion_unitary)) {
  const Index m = basis_.complement_dim();
  if (unitary_.rows() != m || unitary_.cols() != m) {
    throw ValidationError("basis completion: unitary must act on the complement dimension");
  }
  const double defect = max_abs(unitary_.adjoint() * unitary_ - ComplexMatrix::Identity(m, m));
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "basis completion: completion matrix is not unitary (defect " << defect << ")";
    throw ValidationError(os.str());
  }
}

ComplexMatrix BasisCompletion::full_basis() const {
  ComplexMatrix w(basis_.dim(), basis_.dim());
  w << basis_.span_columns(), basis_.complement_columns() * unitary_;
  return w;
}

MeasureResult ctr_unnormalized(const IncompleteBasis& basis, const DensityMatrix& rho, const OptimizerConfig& cfg,
                               const std::optional<FreeStateParams>& hint) {
  require_dims(basis, rho, "ctr_unnormalized");
  require_restarts(cfg, "ctr_unnormalized");
  const Index d = basis.dim();
  const Index n = basis.size();
  const Index m = basis.complement_dim();
  const FreeStateCoordinates coords(n, m);
  const ComplexMatrix block_rho = basis.to_block(rho.matrix());

  ComplexMatrix diff(d, d);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(d);
  double q = 0.0;
  RealVector p;
  ComplexMatrix comp;
  const Objective objective = [&](const RealVector& x) {
    coords.decode(x, q, p, comp);
    diff = block_rho;
    for (Index i = 0; i < n; ++i) diff(i, i) -= q * p[i];
    diff.bottomRightCorner(m, m) -= (1.0 - q) * comp;
    solver.compute(diff, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  };

  std::vector<double> values;
  RestartOutcome best{RealVector(), std::numeric_limits<double>::infinity()};
  int iterations = 0;
  int evaluations = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    RealVector x0;
    if (r == 0) {
      x0 = coords.encode(pinched_params(basis, block_rho));
    } else if (r == 1 && hint) {
      x0 = coords.encode(*hint);
    } else {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      std::normal_distribution<double> normal(0.0, 1.0);
      x0.resize(coords.size());
      for (Index i = 0; i < x0.size(); ++i) x0[i] = normal(rng);
    }
    const NelderMeadResult res = nelder_mead(objective, x0, cfg.nelder_mead);
    iterations += res.iterations;
    evaluations += res.evaluations;
    values.push_back(res.value);
    if (res.value < best.value) best = {res.x, res.value};
  }
  MeasureResult out{std::max(best.value, 0.0), coords.params(best.x), {}};
  out.trace = summarize(std::move(values), iterations, evaluations, cfg.agreement_tol);
  return out;
}

NormFactorResult normalization_factor(Index d, Index n, const NormFactorConfig& cfg) {
  if (n < 1 || n >= d) throw ValidationError("normalization_factor: need 1 <= n < d");
  if (cfg.restarts < 1) throw ValidationError("normalization_factor: restarts must be >= 1");
  const IncompleteBasis basis = IncompleteBasis::computational(d, n);
  const bool pure = cfg.search == NormSearch::kPure;
  const Index size = pure ? 2 * d : d * d;

  auto state_of = [&](const RealVector& x) -> ComplexMatrix {
    if (pure) {
      ComplexVector v(d);
      for (Index i = 0; i < d; ++i) v[i] = Complex(x[i], x[d + i]);
      const double nrm = v.norm();
      if (!(nrm > 1e-300)) v.setConstant(1.0 / std::sqrt(static_cast<double>(d)));
      else v /= nrm;
      return v * v.adjoint();
    }
    ComplexMatrix g = normalized_gram(factor_from_reals(x.data(), d));
    return 0.5 * (g + g.adjoint());
  };

  std::optional<FreeStateParams> warm;
  int inner_evals = 0;
  const Objective negative = [&](const RealVector& x) {
    const DensityMatrix rho(state_of(x), 1e-8);
    MeasureResult r = ctr_unnormalized(basis, rho, cfg.inner, warm);
    inner_evals += r.trace.evaluations;
    warm = std::get<FreeStateParams>(r.minimizer);
    return -r.value;
  };

  std::vector<double> values;
  double best = -std::numeric_limits<double>::infinity();
  RealVector best_x;
  int iterations = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector x0(size);
    for (Index i = 0; i < size; ++i) x0[i] = normal(rng);
    warm.reset();
    const NelderMeadResult res = nelder_mead(negative, x0, cfg.outer);
    iterations += res.iterations;
    // re-score the incumbent with a fuller inner search so the maximum is not
    // inflated by an under-minimized inner problem
    OptimizerConfig rescore = cfg.inner;
    rescore.restarts = std::max(cfg.inner.restarts * 4, 8);
    const double v =
        ctr_unnormalized(basis, DensityMatrix(state_of(res.x), 1e-8), rescore).value;
    values.push_back(-v);
    if (v > best) {
      best = v;
      best_x = res.x;
    }
  }
  NormFactorResult out;
  out.value = best;
  out.argmax = DensityMatrix(state_of(best_x), 1e-8);
  out.trace = summarize(values, iterations, inner_evals, cfg.agreement_tol);
  return out;
}

NormalizationCache::NormalizationCache(std::optional<std::filesystem::path> directory, NormFactorConfig cfg)
    : dir_(std::move(directory)), cfg_(std::move(cfg)) {}

NormalizationCache& NormalizationCache::process_default() {
  static NormalizationCache cache([]() -> std::optional<std::filesystem::path> {
    if (const char* env = std::getenv("COHERENTIA_CACHE"); env && *env) return std::filesystem::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
      return std::filesystem::path(xdg) / "coherentia";
    if (const char* home = std::getenv("HOME"); home && *home)
      return std::filesystem::path(home) / ".cache" / "coherentia";
    return std::nullopt;
  }());
  return cache;
}

std::filesystem::path NormalizationCache::file_for(Index d, Index n) const {
  std::ostringstream name;
  name << "normfactor_d" << d << "_n" << n << "_r" << cfg_.restarts << "_"
       << (cfg_.search == NormSearch::kPure ? "pure" : "mixed") << ".json";
  return (dir_ ? *dir_ : std::filesystem::path(".")) / name.str();
}

void NormalizationCache::store(Index d, Index n, const NormFactorResult& r) {
  std::lock_guard<std::mutex> lock(mu_);
  memo_[{d, n}] = r.value;
  write_entry(d, n, r);
}

void NormalizationCache::write_entry(Index d, Index n, const NormFactorResult& r) const {
  if (!dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  std::ofstream out(file_for(d, n));
  if (!out) return;
  const nlohmann::json j = {{"d", d},
                            {"n", n},
                            {"restarts", cfg_.restarts},
                            {"search", cfg_.search == NormSearch::kPure ? "pure" : "mixed"},
                            {"value", r.value},
                            {"converged", r.trace.converged}};
  out << j.dump() << "\n";
}

double NormalizationCache::get(Index d, Index n) {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = memo_.find({d, n}); it != memo_.end()) return it->second;

  auto acceptable = [&](double v) {
    if (!std::isfinite(v) || v <= 0.0) return false;
    return !(d == 4 && n == 2) || std::abs(v - kFourThirds) <= 5e-3;
  };

  if (dir_) {
    std::ifstream in(file_for(d, n));
    if (in) {
      try {
        const auto j = nlohmann::json::parse(in);
        const double v = j.at("value").get<double>();
        if (j.at("d").get<Index>() == d && j.at("n").get<Index>() == n && acceptable(v)) {
          memo_[{d, n}] = v;
          return v;
        }
      } catch (const nlohmann::json::exception&) {
        // unreadable entry: recompute below and overwrite it
      }
    }
  }

  const NormFactorResult r = normalization_factor(d, n, cfg_);
  if (!acceptable(r.value)) {
    std::ostringstream os;
    os << "normalization factor for (d=" << d << ", n=" << n << ") came out as " << r.value;
    throw OptimizationError(os.str());
  }
  memo_[{d, n}] = r.value;
  write_entry(d, n, r);
  return r.value;
}

MeasureResult ctr(const IncompleteBasis& basis, const DensityMatrix& rho, double normalization,
                  const OptimizerConfig& cfg, const std::optional<FreeStateParams>& hint) {
  if (!(normalization > 0.0)) throw ValidationError("ctr: normalization must be positive");
  MeasureResult r = ctr_unnormalized(basis, rho, cfg, hint);
  r.value /= normalization;
  return r;
}

MeasureResult ctr(const IncompleteBasis& basis, const DensityMatrix& rho, const OptimizerConfig& cfg,
                  NormalizationCache& cache) {
  return ctr(basis, rho, cache.get(basis.dim(), basis.size()), cfg);
}

double seed_measure_l1(const ComplexMatrix& full_basis, const DensityMatrix& rho) {
  require_orthonormal_columns(full_basis, rho.dim(), "seed_measure_l1");
  return l1_offdiag(full_basis.adjoint() * rho.matrix() * full_basis);
}

double seed_measure_l1(std::span<const StateVector> full_basis, const DensityMatrix& rho) {
  return seed_measure_l1(columns_of(full_basis), rho);
}

double von_neumann_entropy(const ComplexMatrix& rho) { return shannon_bits(hermitian_eigenvalues(rho)); }

double seed_measure_relent(const ComplexMatrix& full_basis, const DensityMatrix& rho) {
  require_orthonormal_columns(full_basis, rho.dim(), "seed_measure_relent");
  const ComplexMatrix in_basis = full_basis.adjoint() * rho.matrix() * full_basis;
  const double v = shannon_bits(in_basis.diagonal().real()) - von_neumann_entropy(rho.matrix());
  return std::max(v, 0.0);
}

double seed_measure_relent(std::span<const StateVector> full_basis, const DensityMatrix& rho) {
  return seed_measure_relent(columns_of(full_basis), rho);
}

MeasureResult minimal_completion_measure(const IncompleteBasis& basis, const DensityMatrix& rho, SeedMeasure seed,
                                         const OptimizerConfig& cfg) {
  require_dims(basis, rho, "minimal_completion_measure");
  require_restarts(cfg, "minimal_completion_measure");
  const Index m = basis.complement_dim();
  const ComplexMatrix& span = basis.span_columns();
  const ComplexMatrix& comp = basis.complement_columns();
  const double entropy = von_neumann_entropy(rho.matrix());

  auto evaluate = [&](const ComplexMatrix& u) {
    ComplexMatrix w(basis.dim(), basis.dim());
    w << span, comp * u;
    const ComplexMatrix in_basis = w.adjoint() * rho.matrix() * w;
    if (seed == SeedMeasure::kL1) return l1_offdiag(in_basis);
    return std::max(shannon_bits(in_basis.diagonal().real()) - entropy, 0.0);
  };

  if (m == 1) {
    const ComplexMatrix u = ComplexMatrix::Identity(1, 1);
    MeasureResult out{evaluate(u), BasisCompletion(basis, u), {}};
    out.trace.converged = true;
    return out;
  }

  const ComplexMatrix lower = comp.adjoint() * rho.matrix() * comp;
  const ComplexMatrix eigenbasis = eig_hermitian(0.5 * (lower + lower.adjoint()), 1e-8).vectors;

  std::vector<double> values;
  double best = std::numeric_limits<double>::infinity();
  ComplexMatrix best_u = ComplexMatrix::Identity(m, m);
  int iterations = 0;
  int evaluations = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    ComplexMatrix u0;
    if (r == 0) {
      u0 = eigenbasis;
    } else {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      u0 = haar_unitary(m, rng);
    }
    const Objective objective = [&](const RealVector& x) {
      return evaluate(u0 * exp_i_hermitian(hermitian_from_reals(x, m)));
    };
    const NelderMeadResult res = nelder_mead(objective, RealVector::Zero(m * m), cfg.nelder_mead);
    iterations += res.iterations;
    evaluations += res.evaluations;
    values.push_back(res.value);
    if (res.value < best) {
      best = res.value;
      best_u = u0 * exp_i_hermitian(hermitian_from_reals(res.x, m));
    }
  }
  MeasureResult out{best, BasisCompletion(basis, best_u), {}};
  out.trace = summarize(std::move(values), iterations, evaluations, cfg.agreement_tol);
  return out;
}

}  // namespace coherentia
