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
#include <span>
#include <vector>

#include "mmvqe/ansatz.hpp"
#include "mmvqe/kernels.hpp"
#include "mmvqe/pauli.hpp"
#include "mmvqe/state.hpp"

namespace mmvqe {

enum class ExecPolicy { Serial, Parallel };

/// Applies one gate in place; theta is ignored by fixed gates.
void apply_gate(StateVector& v, const Gate& g, double theta,
                ExecPolicy policy = ExecPolicy::Parallel);

/// U(theta)|0...0>. Throws std::invalid_argument on a length mismatch.
StateVector simulate(const Circuit& c, std::span<const double> theta,
                     ExecPolicy policy = ExecPolicy::Parallel);

/// Re <v|H|v>. Throws std::logic_error if the imaginary part exceeds 1e-9.
double expectation_exact(const StateVector& v, const PauliSum& h,
                         ExecPolicy policy = ExecPolicy::Parallel);

enum class EstimatorMode { Exact, Sampled };

/// PerTerm: every term gets its own independent shots.
/// PerGroup: qubit-wise commuting terms share one set of shots.
enum class ShotAllocation { PerTerm, PerGroup };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::Sampled;
  int shots = 1024;
  std::uint64_t seed = 0;
  ShotAllocation allocation = ShotAllocation::PerTerm;

  void validate() const;
};

/// Shot-sampled estimator with a precompiled measurement plan.
///
/// Identity terms are added exactly. Under PerTerm every other term is
/// measured on its own `shots` samples drawn from the state rotated into the
/// term's eigenbasis; the stream for term t at evaluation e is keyed by
/// (seed, e, t). Under PerGroup terms are greedily packed, in order, into
/// qubit-wise commuting groups and each group draws one stream keyed by
/// (seed, e, first term of the group). Either way the value does not depend
/// on thread count.
class Estimator {
 public:
  Estimator(const PauliSum& h, EstimatorConfig cfg);

  const EstimatorConfig& config() const { return cfg_; }

  /// Exact or sampled value depending on the configured mode.
  double operator()(const StateVector& v, std::uint64_t evaluation) const;

  /// Per-term estimates, in the order of h.terms(). Sampled mode only.
  std::vector<double> sample_terms(const StateVector& v, std::uint64_t evaluation) const;

  /// Number of distinct measurement settings in the plan.
  std::size_t measurement_groups() const { return bases_.size(); }

 private:
  struct Basis {
    std::uint64_t x = 0;  // basis-index bits carrying X or Y
    std::uint64_t y = 0;  // basis-index bits carrying Y
    std::uint64_t support = 0;
    std::vector<std::size_t> terms;
  };

  PauliSum h_;
  EstimatorConfig cfg_;
  std::vector<Basis> bases_;
  std::vector<std::uint64_t> support_;  // per term, non-identity index bits
};

/// Single-shot convenience wrapper around Estimator (evaluation index 0).
double expectation_sampled(const StateVector& v, const PauliSum& h,
                           const EstimatorConfig& cfg);

}  // namespace mmvqe
