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

#include "coherentia_tools/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "coherentia/duality.hpp"
#include "coherentia/error.hpp"
#include "coherentia/json_io.hpp"
#include "coherentia/measures.hpp"
#include "coherentia/resource_theory.hpp"

namespace coherentia::cli {

namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

void emit(std::ostream& out, const Json& j, bool as_json) {
  if (as_json) {
    out << json_io::canonical(j) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (text.size() > 100) text = "<" + std::to_string(value.size()) + " entries; use --json>";
    out << key << ": " << text << "\n";
  }
}

Json trace_json(const OptimizerTrace& t) {
  return {{"iterations", t.iterations}, {"evaluations", t.evaluations}, {"restarts", t.restarts}};
}

Json point_json(const DualityPoint& p) {
  return {{"ctr_value", p.ctr_value},
          {"distinguishability", p.distinguishability},
          {"gamma0", p.gamma0},
          {"discard_probability", p.discard_probability},
          {"value", p.value},
          {"degenerate", p.degenerate},
          {"inner_converged", p.inner_converged}};
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

// Parses with CLI11 and maps its outcome onto the exit-code contract.
template <typename Run>
int dispatch(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Run&& run) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return run();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OptimizationError& e) {
    err << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

void finish_manifest(const std::string& path, std::string command, std::vector<std::string> inputs,
                     std::uint64_t seed, Clock::time_point start, const Json& outputs) {
  if (path.empty()) return;
  RunManifest m{std::move(command), std::move(inputs), seed, tool_version(),
                std::chrono::duration<double>(Clock::now() - start).count(), outputs};
  write_manifest(m, path);
}

}  // namespace

int run_coherence(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence with respect to an incomplete basis", "coherence"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Single-line JSON output");

  std::string basis_path, state_path, channel_path, seed_measure = "l1";
  int restarts = 32;
  std::uint64_t seed = 7;
  std::optional<double> normalization;
  double tol = 1e-8;

  auto* ctr_cmd = app.add_subcommand("ctr", "Trace-distance coherence C_tr");
  auto* mc_cmd = app.add_subcommand("min-completion", "Minimal-completion coherence");
  auto* vc_cmd = app.add_subcommand("verify-channel", "Classify a Kraus channel as class 1 / class 2 incoherent");
  auto* fc_cmd = app.add_subcommand("free-check", "Test membership in the free set");
  for (auto* sub : {ctr_cmd, mc_cmd, vc_cmd, fc_cmd}) {
    sub->add_option("--basis", basis_path, "Incomplete basis JSON")->required();
    sub->add_flag("--json", as_json, "Single-line JSON output");
  }
  for (auto* sub : {ctr_cmd, mc_cmd, fc_cmd}) sub->add_option("--state", state_path, "Density matrix or state vector JSON")->required();
  for (auto* sub : {ctr_cmd, mc_cmd}) {
    sub->add_option("--restarts", restarts, "Multi-start restarts")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Master seed");
  }
  ctr_cmd->add_option("--normalization", normalization, "Override the normalization factor");
  mc_cmd->add_option("--seed-measure", seed_measure, "l1 or relent")->check(CLI::IsMember({"l1", "relent"}));
  vc_cmd->add_option("--channel", channel_path, "Kraus channel JSON")->required();
  vc_cmd->add_option("--tol", tol, "Structure tolerance")->check(CLI::PositiveNumber);
  fc_cmd->add_option("--tol", tol, "Structure tolerance")->check(CLI::PositiveNumber);

  return dispatch(app, args, out, err, [&]() -> int {
    const IncompleteBasis basis = json_io::basis_from_json(json_io::read_file(basis_path), "basis");
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;

    if (ctr_cmd->parsed()) {
      const DensityMatrix rho = json_io::density_from_json(json_io::read_file(state_path), "state");
      const double n = normalization ? *normalization : NormalizationCache::process_default().get(basis.dim(), basis.size());
      const MeasureResult r = ctr(basis, rho, n, cfg);
      Json j = {{"value", r.value},
                {"unnormalized_value", r.value * n},
                {"normalization", n},
                {"converged", r.trace.converged},
                {"minimizer", json_io::to_json(std::get<FreeStateParams>(r.minimizer))},
                {"trace", trace_json(r.trace)}};
      emit(out, j, as_json);
      return r.trace.converged ? kOk : kNotConverged;
    }
    if (mc_cmd->parsed()) {
      const DensityMatrix rho = json_io::density_from_json(json_io::read_file(state_path), "state");
      const SeedMeasure sm = seed_measure == "l1" ? SeedMeasure::kL1 : SeedMeasure::kRelativeEntropy;
      const MeasureResult r = minimal_completion_measure(basis, rho, sm, cfg);
      Json j = {{"value", r.value},
                {"seed_measure", seed_measure},
                {"converged", r.trace.converged},
                {"minimizer", json_io::to_json(std::get<BasisCompletion>(r.minimizer))},
                {"trace", trace_json(r.trace)}};
      emit(out, j, as_json);
      return r.trace.converged ? kOk : kNotConverged;
    }
    if (vc_cmd->parsed()) {
      const KrausChannel channel = json_io::channel_from_json(json_io::read_file(channel_path), "channel");
      if (channel.dim() != basis.dim()) throw ValidationError("channel: dimension differs from the basis");
      const StructureCheck c1 = verify_class1(basis, channel, tol);
      const StructureCheck c2 = verify_class2(basis, channel, tol);
      Json defects = Json::array();
      for (const auto& [label, check] : {std::pair{"class1", &c1}, std::pair{"class2", &c2}}) {
        const Json found = json_io::to_json(*check);
        for (auto d : found["defects"]) {
          d["class"] = label;
          defects.push_back(std::move(d));
        }
      }
      Json j = {{"class1", c1.passed},
                {"class2", c2.passed},
                {"completeness_defect", KrausChannel::completeness_defect(channel.kraus_ops())},
                {"defects", std::move(defects)}};
      emit(out, j, as_json);
      return kOk;
    }
    const DensityMatrix rho = json_io::density_from_json(json_io::read_file(state_path), "state");
    const StructureCheck check = is_free_state(basis, rho, tol);
    Json j = json_io::to_json(check);
    j["free"] = check.passed;
    j.erase("passed");
    emit(out, j, as_json);
    return kOk;
  });
}

int run_duality(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-slit coherence / path-distinguishability trade-off", "duality"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Single-line JSON output");

  std::string config_path, manifest_path = "duality_manifest.json";
  std::uint64_t seed = 42;
  int restarts = 64, eval_restarts = 32, threads = default_threads(), samples = 10000;
  int inner_restarts = 0, verify_restarts = 32, outer_iterations = 1000;
  double tolerance = 5e-4;
  bool real_only = false;
  std::optional<double> normalization;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate C_tr + D for one configuration");
  auto* opt_cmd = app.add_subcommand("optimize", "Maximize C_tr + D over configurations");
  auto* cert_cmd = app.add_subcommand("certify", "Score random configurations against the bound");
  for (auto* sub : {eval_cmd, opt_cmd, cert_cmd}) {
    sub->add_flag("--json", as_json, "Single-line JSON output");
    sub->add_option("--manifest", manifest_path, "Run manifest path (empty disables)");
    sub->add_option("--normalization", normalization, "Override the (4, 2) normalization factor");
    sub->add_option("--seed", seed, "Master seed");
  }
  eval_cmd->add_option("--config", config_path, "Interferometer configuration JSON")->required();
  eval_cmd->add_option("--restarts", eval_restarts, "Inner ctr restarts")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--restarts", restarts, "Outer restarts")->check(CLI::PositiveNumber);
  opt_cmd->add_flag("--real-only", real_only, "Restrict amplitudes and overlaps to real values");
  opt_cmd->add_option("--tolerance", tolerance, "Agreement of the top two restarts")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--outer-iterations", outer_iterations, "Outer simplex iterations")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--verify-restarts", verify_restarts, "Inner restarts when re-scoring")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--samples", samples, "Random configurations")->check(CLI::PositiveNumber);
  for (auto* sub : {opt_cmd, cert_cmd}) {
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--inner-restarts", inner_restarts, "Inner ctr restarts during the search")->check(CLI::PositiveNumber);
  }

  return dispatch(app, args, out, err, [&]() -> int {
    const auto start = Clock::now();

    if (eval_cmd->parsed()) {
      const InterferometerConfig cfg = json_io::config_from_json(json_io::read_file(config_path), "config");
      OptimizerConfig inner;
      inner.restarts = eval_restarts;
      inner.seed = seed;
      const double n = normalization ? *normalization : NormalizationCache::process_default().get(kSlits, 2);
      const DualityPoint p = objective(cfg, inner, n);
      Json j = point_json(p);
      j["normalization"] = n;
      emit(out, j, as_json);
      finish_manifest(manifest_path, "duality eval", {config_path}, seed, start, j);
      return p.inner_converged ? kOk : kNotConverged;
    }

    if (opt_cmd->parsed()) {
      DualitySearchConfig search;
      search.restarts = restarts;
      search.master_seed = seed;
      search.parametrization = real_only ? Parametrization::kRealRestricted : Parametrization::kFullComplex;
      search.tolerance = tolerance;
      search.threads = threads;
      search.normalization = normalization;
      search.outer.max_iterations = outer_iterations;
      search.verify.restarts = verify_restarts;
      if (inner_restarts > 0) search.inner.restarts = inner_restarts;
      const DualityOptimum opt = maximize_duality(search);
      Json j = {{"best_value", opt.best_value},
                {"best_value_rounded", round3(opt.best_value)},
                {"best_restart", opt.best_restart},
                {"best_config", json_io::to_json(opt.best_config)},
                {"best_point", point_json(opt.best_point)},
                {"per_restart_values", opt.per_restart_values},
                {"search_values", opt.search_values},
                {"converged", opt.converged},
                {"evaluations", opt.evaluations},
                {"normalization", opt.normalization},
                {"parametrization", real_only ? "real-restricted" : "full-complex"},
                {"restarts", restarts},
                {"seed", seed}};
      emit(out, j, as_json);
      finish_manifest(manifest_path, "duality optimize", {}, seed, start, j);
      return opt.converged ? kOk : kNotConverged;
    }

    CertifyConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.normalization = normalization;
    if (inner_restarts > 0) cfg.inner.restarts = inner_restarts;
    const CertifyReport report = certify_bound(cfg);
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back({{"sample", v.sample}, {"value", v.value}});
    Json j = {{"samples", report.samples},
              {"max_value", report.max_value},
              {"argmax", report.argmax},
              {"max_config", json_io::to_json(report.max_config)},
              {"threshold", report.threshold},
              {"violation_count", report.violations.size()},
              {"violations", std::move(violations)},
              {"seed", seed}};
    emit(out, j, as_json);
    finish_manifest(manifest_path, "duality certify", {}, seed, start, j);
    return kOk;
  });
}

int run_norm_factor(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalization factor of the trace-distance measure", "norm-factor"};
  app.require_subcommand(1);
  bool as_json = false, no_store = false;
  app.add_flag("--json", as_json, "Single-line JSON output");

  Index d = 0, n = 0;
  NormFactorConfig cfg;
  std::string search = "pure";
  auto* compute = app.add_subcommand("compute", "Maximize the unnormalized measure over states");
  compute->add_option("--d", d, "Hilbert-space dimension")->required()->check(CLI::PositiveNumber);
  compute->add_option("--n", n, "Number of basis vectors")->required()->check(CLI::PositiveNumber);
  compute->add_option("--restarts", cfg.restarts, "Outer restarts")->check(CLI::PositiveNumber);
  compute->add_option("--seed", cfg.seed, "Master seed");
  compute->add_option("--search", search, "pure or mixed")->check(CLI::IsMember({"pure", "mixed"}));
  compute->add_flag("--no-store", no_store, "Do not write the result to the cache");
  compute->add_flag("--json", as_json, "Single-line JSON output");

  return dispatch(app, args, out, err, [&]() -> int {
    if (n >= d) throw ValidationError("norm-factor: need n < d");
    cfg.search = search == "pure" ? NormSearch::kPure : NormSearch::kMixed;
    const NormFactorResult r = normalization_factor(d, n, cfg);
    std::optional<std::string> stored;
    if (!no_store) {
      NormalizationCache cache(NormalizationCache::process_default().directory(), cfg);
      if (cache.directory()) {
        cache.store(d, n, r);
        stored = cache.file_for(d, n).string();
      }
    }
    Json j = {{"d", d},
              {"n", n},
              {"value", r.value},
              {"converged", r.trace.converged},
              {"argmax", json_io::to_json(r.argmax)},
              {"search", search},
              {"restarts", cfg.restarts},
              {"seed", cfg.seed},
              {"trace", trace_json(r.trace)}};
    if (stored) j["cache_file"] = *stored;
    emit(out, j, as_json);
    return r.trace.converged ? kOk : kNotConverged;
  });
}

}  // namespace coherentia::cli
