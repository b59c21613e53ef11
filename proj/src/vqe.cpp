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

#include "mmvqe/vqe.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "mmvqe/rng.hpp"
#include "mmvqe/spectra.hpp"

namespace mmvqe {

const char* version() { return MMVQE_VERSION; }

void ExperimentSpec::validate() const {
  model.validate();
  if (ansatz.n_qubits != model.n_qubits()) {
    throw std::invalid_argument("ansatz " + ansatz.name + " acts on " +
                                std::to_string(ansatz.n_qubits) + " qubits, model needs " +
                                std::to_string(model.n_qubits()));
  }
  if (replicas < 1) throw std::invalid_argument("replicas must be at least 1");
  optimizer.validate();
  estimator.validate();
}

double exact_energy(const ModelSpec& model) {
  static std::mutex mu;
  static std::map<std::pair<Model, std::uint64_t>, double> cache;
  model.validate();
  const auto key = std::make_pair(model.model, std::bit_cast<std::uint64_t>(model.lambda));
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double e = ground_energy(build_hamiltonian(model)).energy;
  std::lock_guard lock(mu);
  cache.emplace(key, e);
  return e;
}

std::vector<double> initial_point(int n_params, std::uint64_t seed) {
  SplitMix64 rng(derive_key({seed, 0x696E6974ULL}));
  std::vector<double> theta(static_cast<std::size_t>(n_params));
  for (auto& t : theta) t = 2.0 * std::numbers::pi * rng.uniform();
  return theta;
}

VqeResult run_vqe(const ExperimentSpec& spec, int replica) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  VqeResult r;
  r.spec = spec;
  r.replica = replica;
  r.seed = spec.optimizer.seed + static_cast<std::uint64_t>(replica);

  const PauliSum h = build_hamiltonian(spec.model);
  const Circuit circuit = build_circuit(spec.ansatz);
  EstimatorConfig ecfg = spec.estimator;
  ecfg.seed = r.seed;
  const Estimator estimator(h, ecfg);
  OptimizerConfig ocfg = spec.optimizer;
  ocfg.seed = r.seed;

  std::uint64_t evaluation = 0;
  const Objective objective = [&](std::span<const double> theta) {
    return estimator(simulate(circuit, theta), evaluation++);
  };
  r.theta0 = initial_point(circuit.n_params, r.seed);
  r.exact_energy = exact_energy(spec.model);
  OptimizerRun run = minimize(objective, r.theta0, ocfg);

  r.vqe_energy = run.best_value;
  r.gap = r.vqe_energy - r.exact_energy;
  r.theta_best = std::move(run.best_theta);
  r.state_energy = expectation_exact(simulate(circuit, r.theta_best), h);
  r.history.reserve(run.history.size());
  for (const auto& e : run.history) r.history.push_back(e.value);
  r.evaluations = run.evaluations;
  r.iterations = run.iterations;
  r.stop_reason = std::move(run.stop_reason);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<VqeResult> run_replicas(const ExperimentSpec& spec) {
  std::vector<VqeResult> out;
  for (int k = 0; k < spec.replicas; ++k) out.push_back(run_vqe(spec, k));
  return out;
}

SweepOutcome run_sweep(const std::vector<ExperimentSpec>& specs, int parallelism) {
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (int k = 0; k < std::max(specs[i].replicas, 1); ++k) tasks.emplace_back(i, k);
  }
  std::vector<std::optional<VqeResult>> slots(tasks.size());
  std::vector<std::string> errors(tasks.size());
  const int workers = parallelism > 0 ? parallelism : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(tasks.size());

#pragma omp parallel for schedule(dynamic) num_threads(workers) if (count > 1)
  for (std::int64_t t = 0; t < count; ++t) {
    const auto [i, k] = tasks[static_cast<std::size_t>(t)];
    try {
      slots[static_cast<std::size_t>(t)] = run_vqe(specs[i], k);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(t)] = e.what();
    }
  }

  SweepOutcome out;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (slots[t]) {
      out.results.push_back(std::move(*slots[t]));
    } else {
      out.failures.push_back({specs[tasks[t].first], tasks[t].second, errors[t]});
    }
  }
  return out;
}

std::vector<ExperimentSpec> catalog_specs(Model model, const std::vector<double>& couplings,
                                          const std::vector<OptimizerKind>& optimizers,
                                          const ExperimentSpec& base) {
  std::vector<ExperimentSpec> out;
  for (double lambda : couplings) {
    const ModelSpec ms{model, lambda};
    for (const AnsatzSpec& a : catalog(ms)) {
      for (OptimizerKind k : optimizers) {
        ExperimentSpec s = base;
        s.model = ms;
        s.ansatz = a;
        s.optimizer.kind = k;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<VqeResult>& results) {
  using Key = std::tuple<Model, double, Family, OptimizerKind>;
  std::map<Key, SummaryRow> best;
  for (const auto& r : results) {
    const Key key{r.spec.model.model, r.spec.model.lambda, r.spec.ansatz.family,
                  r.spec.optimizer.kind};
    auto it = best.find(key);
    if (it == best.end() || r.vqe_energy < it->second.vqe_energy) {
      best[key] = {r.spec.model.model, r.spec.model.lambda, r.spec.ansatz.family,
                   r.spec.optimizer.kind, r.spec.ansatz.name, r.seed,
                   r.vqe_energy, r.exact_energy, r.gap};
    }
  }
  std::vector<SummaryRow> out;
  for (auto& [k, row] : best) out.push_back(row);
  return out;
}

namespace {

std::string entanglement_name(Entanglement e) {
  return e == Entanglement::Circular ? "circular" : "full";
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_lambda(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void write_preamble(std::ostream& os, const nlohmann::json& config) {
  os << "# mmvqe " << version() << '\n';
  os << "# config " << config.dump() << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

nlohmann::json to_json(const ExperimentSpec& s) {
  nlohmann::json a = {{"name", s.ansatz.name},
                      {"family", family_name(s.ansatz.family)},
                      {"n_qubits", s.ansatz.n_qubits},
                      {"depth", s.ansatz.depth}};
  if (s.ansatz.family == Family::EvolvedOperator) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& p : s.ansatz.operators) ops.push_back(p.label());
    a["operators"] = ops;
  } else {
    a["rotation"] = rotation_name(s.ansatz.rotation);
    a["entanglement"] = entanglement_name(s.ansatz.entanglement);
  }
  const OptimizerConfig& o = s.optimizer;
  nlohmann::json opt = {{"kind", optimizer_name(o.kind)},
                        {"max_iterations", o.iterations()},
                        {"seed", o.seed}};
  switch (o.kind) {
    case OptimizerKind::SPSA:
      opt["c"] = o.spsa.c;
      opt["alpha"] = o.spsa.alpha;
      opt["gamma"] = o.spsa.gamma;
      opt["stability_fraction"] = o.spsa.stability_fraction;
      opt["target_step"] = o.spsa.target_step;
      opt["calibration_samples"] = o.spsa.calibration_samples;
      if (o.spsa.a) opt["a"] = *o.spsa.a;
      break;
    case OptimizerKind::COBYLA:
      opt["rho_begin"] = o.cobyla.rho_begin;
      opt["rho_end"] = o.cobyla.rho_end;
      break;
    case OptimizerKind::NelderMead:
      opt["xtol"] = o.nelder_mead.xtol;
      opt["ftol"] = o.nelder_mead.ftol;
      break;
    case OptimizerKind::Adam:
      opt["lr"] = o.adam.lr;
      opt["beta1"] = o.adam.beta1;
      opt["beta2"] = o.adam.beta2;
      opt["eps"] = o.adam.eps;
      opt["fd_step"] = o.adam.fd_step;
      break;
  }
  return {{"model", model_name(s.model.model)},
          {"lambda", s.model.lambda},
          {"ansatz", a},
          {"optimizer", opt},
          {"estimator",
           {{"mode", s.estimator.mode == EstimatorMode::Exact ? "exact" : "sampled"},
            {"shots", s.estimator.shots},
            {"allocation",
             s.estimator.allocation == ShotAllocation::PerGroup ? "per-group" : "per-term"}}},
          {"replicas", s.replicas}};
}

nlohmann::json to_json(const VqeResult& r) {
  return {{"version", version()},
          {"spec", to_json(r.spec)},
          {"replica", r.replica},
          {"seed", r.seed},
          {"exact_energy", r.exact_energy},
          {"vqe_energy", r.vqe_energy},
          {"gap", r.gap},
          {"state_energy", r.state_energy},
          {"evaluations", r.evaluations},
          {"iterations", r.iterations},
          {"stop_reason", r.stop_reason},
          {"initial_point", {{"distribution", "uniform[0, 2pi)"}, {"theta", r.theta0}}},
          {"theta_best", r.theta_best},
          {"history", r.history}};
}

std::string run_stem(const VqeResult& r) {
  return model_name(r.spec.model.model) + "_l" + fmt_lambda(r.spec.model.lambda) + "_" +
         r.spec.ansatz.name + "_" + optimizer_name(r.spec.optimizer.kind) + "_s" +
         std::to_string(r.seed);
}

void write_run_files(const std::filesystem::path& dir, const VqeResult& r,
                     const nlohmann::json& config) {
  const std::string stem = run_stem(r);
  nlohmann::json doc = to_json(r);
  doc["config"] = config;
  open_out(dir / (stem + ".json")) << doc.dump(2) << '\n';

  std::ofstream csv = open_out(dir / (stem + "_convergence.csv"));
  nlohmann::json meta = config;
  meta["seed"] = r.seed;
  write_preamble(csv, meta);
  csv << "evaluation,energy\n";
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    csv << i << ',' << fmt_double(r.history[i]) << '\n';
  }
}

void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<VqeResult>& results,
                         const nlohmann::json& config) {
  std::ofstream os = open_out(path);
  write_preamble(os, config);
  os << "model,lambda,ansatz,optimizer,seed,exact_energy,vqe_energy,gap,evaluations,"
        "wall_time\n";
  for (const auto& r : results) {
    os << model_name(r.spec.model.model) << ',' << fmt_lambda(r.spec.model.lambda) << ','
       << r.spec.ansatz.name << ',' << optimizer_name(r.spec.optimizer.kind) << ',' << r.seed
       << ',' << fmt_double(r.exact_energy) << ',' << fmt_double(r.vqe_energy) << ','
       << fmt_double(r.gap) << ',' << r.evaluations << ',' << fmt_double(r.wall_time) << '\n';
  }
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows,
                       const nlohmann::json& config) {
  std::ofstream os = open_out(path);
  write_preamble(os, config);
  os << "model,lambda,family,optimizer,ansatz,seed,vqe_energy,exact_energy,gap\n";
  for (const auto& s : rows) {
    os << model_name(s.model) << ',' << fmt_lambda(s.lambda) << ',' << family_name(s.family)
       << ',' << optimizer_name(s.optimizer) << ',' << s.ansatz << ',' << s.seed << ','
       << fmt_double(s.vqe_energy) << ',' << fmt_double(s.exact_energy) << ','
       << fmt_double(s.gap) << '\n';
  }
}

void write_failure_manifest(const std::filesystem::path& path,
                            const std::vector<SweepFailure>& failures,
                            const nlohmann::json& config) {
  nlohmann::json doc = {{"version", version()}, {"config", config}};
  nlohmann::json list = nlohmann::json::array();
  for (const auto& f : failures) {
    list.push_back({{"spec", to_json(f.spec)},
                    {"replica", f.replica},
                    {"seed", f.spec.optimizer.seed + static_cast<std::uint64_t>(f.replica)},
                    {"error", f.message}});
  }
  doc["failures"] = list;
  open_out(path) << doc.dump(2) << '\n';
}

}  // namespace mmvqe
