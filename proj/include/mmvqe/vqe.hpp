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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmvqe/ansatz.hpp"
#include "mmvqe/models.hpp"
#include "mmvqe/optimizers.hpp"
#include "mmvqe/statevector.hpp"

namespace mmvqe {

/// Artifact version string, e.g. "0.1.0+abc1234".
const char* version();

struct ExperimentSpec {
  ModelSpec model;
  AnsatzSpec ansatz;
  /// optimizer.seed is the base seed; replica r runs with base + r.
  OptimizerConfig optimizer;
  EstimatorConfig estimator;
  int replicas = 5;

  /// Throws std::invalid_argument when the pieces do not fit together.
  void validate() const;
};

struct VqeResult {
  ExperimentSpec spec;
  int replica = 0;
  std::uint64_t seed = 0;
  double exact_energy = 0.0;
  /// Lowest objective value seen during the run.
  double vqe_energy = 0.0;
  double gap = 0.0;
  /// Noise-free energy of theta_best.
  double state_energy = 0.0;
  std::vector<double> theta0;
  std::vector<double> theta_best;
  /// Objective value of every evaluation, in call order.
  std::vector<double> history;
  int evaluations = 0;
  int iterations = 0;
  std::string stop_reason;
  double wall_time = 0.0;
};

/// Ground energy of the model, computed once per (model, lambda) and cached.
double exact_energy(const ModelSpec& model);

/// Uniform angles in [0, 2*pi) drawn from the stream of `seed`.
std::vector<double> initial_point(int n_params, std::uint64_t seed);

/// Runs one replica. Throws NonFiniteObjective and the submodule errors.
VqeResult run_vqe(const ExperimentSpec& spec, int replica = 0);

/// All replicas of one spec, sequentially.
std::vector<VqeResult> run_replicas(const ExperimentSpec& spec);

struct SweepFailure {
  ExperimentSpec spec;
  int replica = 0;
  std::string message;
};

struct SweepOutcome {
  /// Ordered by (spec index, replica) regardless of scheduling.
  std::vector<VqeResult> results;
  std::vector<SweepFailure> failures;
};

/// Runs every (spec, replica) pair on `parallelism` workers (0 = all cores).
/// A failing run is recorded and the sweep continues.
SweepOutcome run_sweep(const std::vector<ExperimentSpec>& specs, int parallelism = 0);

/// Cross product of the model catalog with couplings and optimizers.
/// `base` supplies optimizer and estimator settings.
std::vector<ExperimentSpec> catalog_specs(Model model, const std::vector<double>& couplings,
                                          const std::vector<OptimizerKind>& optimizers,
                                          const ExperimentSpec& base);

struct SummaryRow {
  Model model = Model::BosonicL2;
  double lambda = 0.0;
  Family family = Family::EfficientSU2;
  OptimizerKind optimizer = OptimizerKind::COBYLA;
  std::string ansatz;
  std::uint64_t seed = 0;
  double vqe_energy = 0.0;
  double exact_energy = 0.0;
  double gap = 0.0;
};

/// Best result per (model, lambda, family, optimizer), sorted by those keys.
std::vector<SummaryRow> summarize(const std::vector<VqeResult>& results);

nlohmann::json to_json(const ExperimentSpec& spec);
/// Omits wall_time so that reruns produce identical documents.
nlohmann::json to_json(const VqeResult& r);

/// "<model>_l<lambda>_<ansatz>_<optimizer>_s<seed>"
std::string run_stem(const VqeResult& r);

/// Writes <stem>.json and <stem>_convergence.csv into `dir`. `config` is
/// embedded verbatim as the effective configuration.
void write_run_files(const std::filesystem::path& dir, const VqeResult& r,
                     const nlohmann::json& config);

/// CSV files start with '#' lines carrying the version and configuration.
void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<VqeResult>& results,
                         const nlohmann::json& config);
void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRow>& rows,
                       const nlohmann::json& config);
void write_failure_manifest(const std::filesystem::path& path,
                            const std::vector<SweepFailure>& failures,
                            const nlohmann::json& config);

}  // namespace mmvqe
