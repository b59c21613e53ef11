// Copyright 2026 The mmvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmvqe/ansatz.hpp"
#include "mmvqe/models.hpp"
#include "mmvqe/optimizers.hpp"
#include "mmvqe/spectra.hpp"
#include "mmvqe/vqe.hpp"

namespace mmvqe::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double x, const char* spec = "%.10g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

/// Settings shared by `vqe` and `sweep`.
struct RunOptions {
  std::string model;
  int shots = 1024;
  std::uint64_t seed = 0;
  int replicas = 5;
  int parallelism = 0;
  int max_iterations = 0;
  std::string out_dir = "results";
  bool exact_expectation = false;
  std::string allocation = "per-term";
  bool json = false;

  OptimizerConfig optimizer;
  double spsa_a = 0.0;
  CLI::Option* spsa_a_opt = nullptr;
};

void add_run_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--model", o.model, "Model")
      ->required()
      ->check(CLI::IsMember(model_names()));
  sub->add_option("--shots", o.shots, "Shots per expectation estimate")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Base seed; replica r uses seed + r");
  sub->add_option("--parallelism", o.parallelism, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--max-iterations", o.max_iterations,
                  "SPSA/Adam iterations or COBYLA/Nelder-Mead evaluation cap (0 = default)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--out-dir", o.out_dir, "Output directory")->envname("MMVQE_OUT_DIR");
  sub->add_flag("--exact-expectation", o.exact_expectation,
                "Use exact expectation values instead of sampling");
  sub->add_option("--shot-allocation", o.allocation,
                  "per-term: independent shots per term; per-group: shared shots per "
                  "qubit-wise commuting group")
      ->check(CLI::IsMember({"per-term", "per-group"}));
  sub->add_flag("--json", o.json, "Print machine-readable JSON");

  OptimizerConfig& c = o.optimizer;
  sub->add_option("--spsa-c", c.spsa.c, "SPSA perturbation size c")->check(CLI::PositiveNumber);
  sub->add_option("--spsa-alpha", c.spsa.alpha, "SPSA gain exponent alpha");
  sub->add_option("--spsa-gamma", c.spsa.gamma, "SPSA perturbation exponent gamma");
  sub->add_option("--spsa-stability", c.spsa.stability_fraction,
                  "SPSA stability constant as a fraction of the iteration budget");
  sub->add_option("--spsa-target-step", c.spsa.target_step,
                  "First-step magnitude used to calibrate a")
      ->check(CLI::PositiveNumber);
  sub->add_option("--spsa-calibration", c.spsa.calibration_samples,
                  "Perturbation pairs used for calibration")
      ->check(CLI::PositiveNumber);
  o.spsa_a_opt = sub->add_option("--spsa-a", o.spsa_a, "Fixed SPSA gain a (skips calibration)");
  sub->add_option("--cobyla-rho-begin", c.cobyla.rho_begin, "COBYLA initial trust radius")
      ->check(CLI::PositiveNumber);
  sub->add_option("--cobyla-rho-end", c.cobyla.rho_end, "COBYLA final trust radius")
      ->check(CLI::PositiveNumber);
  sub->add_option("--nm-xtol", c.nelder_mead.xtol, "Nelder-Mead simplex size tolerance");
  sub->add_option("--nm-ftol", c.nelder_mead.ftol, "Nelder-Mead value spread tolerance");
  sub->add_option("--adam-lr", c.adam.lr, "Adam learning rate")->check(CLI::PositiveNumber);
  sub->add_option("--adam-beta1", c.adam.beta1, "Adam first-moment decay");
  sub->add_option("--adam-beta2", c.adam.beta2, "Adam second-moment decay");
  sub->add_option("--adam-eps", c.adam.eps, "Adam denominator offset");
  sub->add_option("--adam-fd-step", c.adam.fd_step, "Central finite-difference step")
      ->check(CLI::PositiveNumber);
}

ExperimentSpec base_spec(const RunOptions& o) {
  ExperimentSpec s;
  s.optimizer = o.optimizer;
  s.optimizer.seed = o.seed;
  s.optimizer.max_iterations = o.max_iterations;
  if (o.spsa_a_opt->count() > 0) s.optimizer.spsa.a = o.spsa_a;
  s.estimator.mode = o.exact_expectation ? EstimatorMode::Exact : EstimatorMode::Sampled;
  s.estimator.shots = o.shots;
  s.estimator.allocation =
      o.allocation == "per-group" ? ShotAllocation::PerGroup : ShotAllocation::PerTerm;
  s.replicas = o.replicas;
  return s;
}

/// Every option of the subcommand with the value it ended up with.
json effective_config(const CLI::App* sub, const std::string& config_file) {
  json options = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    // Presentation-only options stay out so reruns write identical files.
    if (name == "help" || name.empty() || name == "json" || name == "out-dir") continue;
    if (opt->get_type_size() == 0) {
      options[name] = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      std::string joined;
      for (std::size_t i = 0; i < res.size(); ++i) joined += (i ? "," : "") + res[i];
      options[name] = joined;
    } else {
      options[name] = opt->get_default_str();
    }
  }
  json j = {{"command", sub->get_name()}, {"options", options}, {"version", version()}};
  if (!config_file.empty()) j["config_file"] = config_file;
  return j;
}

std::vector<double> parse_couplings(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("invalid coupling '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

int cmd_hamiltonian(const std::string& model, double lambda, const std::string& out_path,
                    std::ostream& out) {
  const ModelSpec ms{parse_model(model), lambda};
  const std::string text = build_hamiltonian(ms).to_text();
  if (out_path.empty()) {
    out << text;
    return kExitOk;
  }
  const fs::path p(out_path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
  os << text;
  return kExitOk;
}

int cmd_exact(const std::string& model, double lambda, std::uint64_t seed,
              const json& config, std::ostream& out) {
  const ModelSpec ms{parse_model(model), lambda};
  LanczosOptions opts;
  opts.seed = seed;
  const GroundEnergy g = ground_energy(build_hamiltonian(ms), opts);
  json j = {{"model", model_name(ms.model)},
            {"lambda", lambda},
            {"energy", g.energy},
            {"iterations", g.iterations},
            {"seed", g.seed},
            {"version", version()},
            {"config", config}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_vqe(const RunOptions& o, double lambda, const std::string& ansatz,
            const std::string& optimizer, const json& config, std::ostream& out,
            std::ostream& err) {
  ExperimentSpec spec = base_spec(o);
  spec.model = {parse_model(o.model), lambda};
  spec.ansatz = find_ansatz(spec.model, ansatz);
  spec.optimizer.kind = parse_optimizer(optimizer);
  spec.validate();

  const SweepOutcome outcome = run_sweep({spec}, o.parallelism);
  const fs::path dir(o.out_dir);
  for (const auto& r : outcome.results) write_run_files(dir, r, config);
  if (!outcome.failures.empty()) {
    write_failure_manifest(dir / "failures.json", outcome.failures, config);
    for (const auto& f : outcome.failures) {
      err << "replica " << f.replica << " failed: " << f.message << '\n';
    }
  }
  if (outcome.results.empty()) return kExitFailure;

  const auto best = std::min_element(
      outcome.results.begin(), outcome.results.end(),
      [](const VqeResult& a, const VqeResult& b) { return a.vqe_energy < b.vqe_energy; });
  if (o.json) {
    json runs = json::array();
    for (const auto& r : outcome.results) {
      runs.push_back({{"seed", r.seed},
                      {"vqe_energy", r.vqe_energy},
                      {"gap", r.gap},
                      {"evaluations", r.evaluations},
                      {"file", run_stem(r) + ".json"}});
    }
    json j = {{"version", version()},
              {"model", model_name(spec.model.model)},
              {"lambda", lambda},
              {"ansatz", spec.ansatz.name},
              {"optimizer", optimizer_name(spec.optimizer.kind)},
              {"exact_energy", best->exact_energy},
              {"best", {{"seed", best->seed}, {"vqe_energy", best->vqe_energy}, {"gap", best->gap}}},
              {"runs", runs},
              {"failures", outcome.failures.size()},
              {"config", config}};
    out << j.dump(2) << '\n';
  } else {
    out << model_name(spec.model.model) << " lambda=" << fmt(lambda, "%g") << ' '
        << spec.ansatz.name << ' ' << optimizer_name(spec.optimizer.kind)
        << ": best energy " << fmt(best->vqe_energy) << " (seed " << best->seed << "), exact "
        << fmt(best->exact_energy) << ", gap " << fmt(best->gap) << " ["
        << outcome.results.size() << '/' << spec.replicas << " runs]\n";
  }
  return outcome.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_sweep(const RunOptions& o, const std::string& lambdas,
              const std::vector<std::string>& optimizers, const json& config,
              std::ostream& out, std::ostream& err) {
  std::vector<OptimizerKind> kinds;
  for (const auto& name : optimizers) kinds.push_back(parse_optimizer(name));
  const std::vector<double> couplings = parse_couplings(lambdas);
  const std::vector<ExperimentSpec> specs =
      catalog_specs(parse_model(o.model), couplings, kinds, base_spec(o));
  for (const auto& s : specs) s.validate();

  const SweepOutcome outcome = run_sweep(specs, o.parallelism);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  for (const auto& r : outcome.results) write_run_files(dir / "runs", r, config);
  write_aggregate_csv(dir / "aggregate.csv", outcome.results, config);
  write_summary_csv(dir / "summary.csv", summarize(outcome.results), config);
  if (!outcome.failures.empty()) {
    write_failure_manifest(dir / "failures.json", outcome.failures, config);
    err << outcome.failures.size() << " run(s) failed; see "
        << (dir / "failures.json").string() << '\n';
  }
  if (o.json) {
    json rows = json::array();
    for (const auto& s : summarize(outcome.results)) {
      rows.push_back({{"lambda", s.lambda},
                      {"family", family_name(s.family)},
                      {"optimizer", optimizer_name(s.optimizer)},
                      {"ansatz", s.ansatz},
                      {"seed", s.seed},
                      {"vqe_energy", s.vqe_energy},
                      {"gap", s.gap}});
    }
    out << json{{"version", version()},
                {"results", outcome.results.size()},
                {"failures", outcome.failures.size()},
                {"summary", rows},
                {"config", config}}
               .dump(2)
        << '\n';
  } else {
    out << outcome.results.size() << " results, " << outcome.failures.size()
        << " failures; aggregate " << (dir / "aggregate.csv").string() << '\n';
  }
  return outcome.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_ansatz_info(const std::string& name, const std::string& model, double lambda,
                    bool as_json, std::ostream& out) {
  const ModelSpec ms{parse_model(model), lambda};
  const AnsatzSpec a = find_ansatz(ms, name);
  const Circuit c = build_circuit(a);
  const auto counts = c.gate_counts();
  if (as_json) {
    json j = {{"name", a.name},
              {"family", family_name(a.family)},
              {"n_qubits", a.n_qubits},
              {"depth", a.depth},
              {"n_params", c.n_params},
              {"gates", counts},
              {"version", version()}};
    if (a.family == Family::EvolvedOperator) {
      json ops = json::array();
      for (const auto& p : a.operators) ops.push_back(p.label());
      j["operators"] = ops;
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "name: " << a.name << '\n'
      << "family: " << family_name(a.family) << '\n'
      << "qubits: " << a.n_qubits << '\n'
      << "depth: " << a.depth << '\n'
      << "n_params: " << c.n_params << '\n'
      << "gates:";
  for (const auto& [k, v] : counts) out << ' ' << k << '=' << v;
  out << '\n';
  if (a.family == Family::EvolvedOperator) {
    out << "operators:";
    for (const auto& p : a.operators) out << ' ' << p.label();
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-model Hamiltonians and variational quantum eigensolver runs", "mmvqe"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  CLI::Option* config_opt =
      app.set_config("--config", "", "INI file with one [section] per subcommand");
  app.option_defaults()->always_capture_default();

  // hamiltonian
  std::string h_model, h_out;
  double h_lambda = 0.0;
  CLI::App* ham = app.add_subcommand("hamiltonian", "Print the Pauli decomposition");
  ham->option_defaults()->always_capture_default();
  ham->add_option("--model", h_model, "Model")->required()->check(CLI::IsMember(model_names()));
  ham->add_option("--lambda", h_lambda, "'t Hooft coupling")
      ->required()
      ->check(CLI::PositiveNumber);
  ham->add_option("--out", h_out, "Output file (default: standard output)");

  // exact
  std::string e_model;
  double e_lambda = 0.0;
  std::uint64_t e_seed = LanczosOptions{}.seed;
  CLI::App* exact = app.add_subcommand("exact", "Ground energy by Lanczos");
  exact->option_defaults()->always_capture_default();
  exact->add_option("--model", e_model, "Model")->required()->check(CLI::IsMember(model_names()));
  exact->add_option("--lambda", e_lambda, "'t Hooft coupling")
      ->required()
      ->check(CLI::PositiveNumber);
  exact->add_option("--seed", e_seed, "Seed of the Lanczos start vector");

  // vqe
  RunOptions v;
  double v_lambda = 0.0;
  std::string v_ansatz, v_optimizer = "cobyla";
  CLI::App* vqe = app.add_subcommand("vqe", "Run one VQE experiment over several seeds");
  vqe->option_defaults()->always_capture_default();
  vqe->add_option("--lambda", v_lambda, "'t Hooft coupling")
      ->required()
      ->check(CLI::PositiveNumber);
  vqe->add_option("--ansatz", v_ansatz, "Ansatz variant name")->required();
  vqe->add_option("--optimizer", v_optimizer, "Optimizer")
      ->check(CLI::IsMember({"spsa", "cobyla", "nelder-mead", "adam"}));
  vqe->add_option("--replicas", v.replicas, "Seeds per experiment")->check(CLI::PositiveNumber);
  add_run_options(vqe, v);

  // sweep
  RunOptions s;
  s.replicas = 1;
  std::string s_lambdas = "0.2,0.5,1.0,2.0";
  std::vector<std::string> s_optimizers = {"cobyla", "spsa"};
  CLI::App* sweep = app.add_subcommand("sweep", "Run the full ansatz catalog of a model");
  sweep->option_defaults()->always_capture_default();
  sweep->add_option("--lambdas", s_lambdas, "Comma-separated couplings");
  sweep->add_option("--optimizers", s_optimizers, "Comma-separated optimizers")
      ->delimiter(',')
      ->check(CLI::IsMember({"spsa", "cobyla", "nelder-mead", "adam"}));
  sweep->add_option("--replicas", s.replicas, "Seeds per experiment")->check(CLI::PositiveNumber);
  add_run_options(sweep, s);

  // ansatz-info
  std::string a_name, a_model;
  double a_lambda = 0.2;
  bool a_json = false;
  CLI::App* info = app.add_subcommand("ansatz-info", "Describe an ansatz variant");
  info->option_defaults()->always_capture_default();
  info->add_option("--name", a_name, "Ansatz variant name")->required();
  info->add_option("--model", a_model, "Model")->required()->check(CLI::IsMember(model_names()));
  info->add_option("--lambda", a_lambda, "'t Hooft coupling")->check(CLI::PositiveNumber);
  info->add_flag("--json", a_json, "Print machine-readable JSON");

  std::vector<const char*> argv{"mmvqe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string config_file = config_opt->count() > 0 ? config_opt->as<std::string>() : "";
  try {
    if (ham->parsed()) return cmd_hamiltonian(h_model, h_lambda, h_out, out);
    if (exact->parsed()) {
      return cmd_exact(e_model, e_lambda, e_seed, effective_config(exact, config_file), out);
    }
    if (vqe->parsed()) {
      return cmd_vqe(v, v_lambda, v_ansatz, v_optimizer, effective_config(vqe, config_file),
                     out, err);
    }
    if (sweep->parsed()) {
      return cmd_sweep(s, s_lambdas, s_optimizers, effective_config(sweep, config_file), out,
                       err);
    }
    if (info->parsed()) return cmd_ansatz_info(a_name, a_model, a_lambda, a_json, out);
  } catch (const UnknownAnsatz& e) {
    err << e.what() << "\nvalid names:";
    for (const auto& n : e.valid_names()) err << ' ' << n;
    err << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace mmvqe::cli
