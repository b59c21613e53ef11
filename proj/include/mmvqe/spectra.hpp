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
#include <stdexcept>
#include <vector>

#include "mmvqe/pauli.hpp"
#include "mmvqe/state.hpp"

namespace mmvqe {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix-free H v.
StateVector apply(const PauliSum& h, const StateVector& v);

struct LanczosOptions {
  std::uint64_t seed = 20240527;
  int max_iterations = 500;
  /// Stop when successive smallest Ritz values differ by less than this.
  double tol = 1e-9;
};

struct GroundEnergy {
  double energy = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

/// Smallest eigenvalue by Lanczos with full reorthogonalization.
/// Throws std::invalid_argument for non-Hermitian input and
/// ConvergenceError when the iteration cap is reached.
GroundEnergy ground_energy(const PauliSum& h, const LanczosOptions& opts = {});

struct DenseGroundState {
  double energy = 0.0;
  std::vector<cplx> vector;
};

/// Dense diagonalization oracle; limited to kMaxDenseQubits.
DenseGroundState dense_ground_state(const PauliSum& h);
/// All eigenvalues in ascending order (dense oracle).
std::vector<double> dense_spectrum(const PauliSum& h);

}  // namespace mmvqe
