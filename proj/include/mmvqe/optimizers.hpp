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
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmvqe {

using Objective = std::function<double(std::span<const double>)>;

enum class OptimizerKind { SPSA, COBYLA, NelderMead, Adam };

/// Command-line names: spsa, cobyla, nelder-mead, adam.
std::string optimizer_name(OptimizerKind k);
/// Throws std::invalid_argument for unknown names.
OptimizerKind parse_optimizer(std::string_view name);

struct SpsaSettings {
  double c = 0.1;
  double alpha = 0.602;
  double gamma = 0.101;
  /// Stability constant A as a fraction of the iteration budget.
  double stability_fraction = 0.1;
  /// Desired magnitude of the first update when `a` is calibrated.
  double target_step = 0.1;
  /// Perturbation pairs evaluated at theta0 to calibrate `a`.
  int calibration_samples = 25;
  /// Fixed gain; skips calibration when set.
  std::optional<double> a;
  /// Observer for every drawn perturbation vector.
  std::function<void(std::span<const int>)> on_perturbation;
};

struct CobylaSettings {
  double rho_begin = 1.0;
  double rho_end = 1e-4;
};

struct NelderMeadSettings {
  /// Stop when every vertex lies within xtol (max norm) of the best one ...
  double xtol = 1e-6;
  /// ... or when all values lie within ftol of the best value.
  double ftol = 1e-8;
  /// Initial simplex: x_i * (1 + nonzero_step), or zero_step when x_i == 0.
  double nonzero_step = 0.05;
  double zero_step = 0.00025;
};

struct AdamSettings {
  double lr = 0.1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Central finite-difference step.
  double fd_step = 1e-2;
};

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::COBYLA;
  /// SPSA and Adam: iterations. COBYLA and Nelder-Mead: evaluation cap.
  /// Zero selects the default for the kind.
  int max_iterations = 0;
  std::uint64_t seed = 0;
  SpsaSettings spsa;
  CobylaSettings cobyla;
  NelderMeadSettings nelder_mead;
  AdamSettings adam;

  /// 300 for SPSA, 2000 for COBYLA and Nelder-Mead, 200 for Adam.
  static int default_iterations(OptimizerKind k);
  int iterations() const;
  void validate() const;
};

struct HistoryEntry {
  int index = 0;
  std::uint64_t theta_hash = 0;
  double value = 0.0;
};

struct OptimizerRun {
  std::vector<double> best_theta;
  double best_value = 0.0;
  std::vector<HistoryEntry> history;
  int evaluations = 0;
  int iterations = 0;
  std::string stop_reason;
};

class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// FNV-1a hash of the raw bytes of theta.
std::uint64_t hash_theta(std::span<const double> theta);

OptimizerRun spsa_minimize(const Objective& f, std::vector<double> theta0,
                           const OptimizerConfig& cfg);
OptimizerRun cobyla_minimize(const Objective& f, std::vector<double> theta0,
                             const OptimizerConfig& cfg);
OptimizerRun nelder_mead_minimize(const Objective& f, std::vector<double> theta0,
                                  const OptimizerConfig& cfg);
OptimizerRun adam_minimize(const Objective& f, std::vector<double> theta0,
                           const OptimizerConfig& cfg);

/// Dispatches on cfg.kind.
OptimizerRun minimize(const Objective& f, std::vector<double> theta0,
                      const OptimizerConfig& cfg);

/// Moment estimates of one Adam run.
struct AdamState {
  std::vector<double> m, v;
  int t = 0;
  /// Bias-corrected first moment from the latest step.
  std::vector<double> m_hat;
};

/// One Adam update of theta given a gradient.
void adam_step(AdamState& state, std::vector<double>& theta,
               std::span<const double> grad, const AdamSettings& s);

}  // namespace mmvqe
