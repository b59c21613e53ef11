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

#include <string>
#include <string_view>
#include <vector>

#include "mmvqe/pauli.hpp"

namespace mmvqe {

enum class Model { BosonicL2, BosonicL4, SusyL2 };

struct ModelSpec {
  Model model = Model::BosonicL2;
  double lambda = 0.2;

  int n_qubits() const;
  /// Throws std::invalid_argument when lambda is not a positive finite value.
  void validate() const;
};

/// Command-line names: bosonic2, bosonic4, susy2.
std::string model_name(Model m);
/// Throws std::invalid_argument for unknown names.
Model parse_model(std::string_view name);
std::vector<std::string> model_names();

/// The four couplings studied for every model.
inline const std::vector<double> kPaperCouplings = {0.2, 0.5, 1.0, 2.0};

/// Local operators of one bosonic mode truncated to `cutoff` levels.
struct ModeOperators {
  int cutoff = 2;
  int qubits = 1;
  PauliSum annihilation;
  PauliSum number;
  /// a + a^dagger
  PauliSum position;
};

/// Fock-basis matrix of the truncated annihilation operator.
DenseBlock truncated_annihilation(int cutoff);
ModeOperators mode_operators(int cutoff);

/// Places a local sum on qubits [offset, offset + local.n_qubits()).
PauliSum embed(const PauliSum& local, int n_qubits, int offset);

/// Jordan-Wigner annihilator for fermion `index` of `n_fermions`, with the
/// fermion register starting at qubit `offset` of an n-qubit system.
PauliSum jw_annihilation(int n_qubits, int offset, int index);

/// Bosonic SU(2) two-matrix Hamiltonian with m = 1 and six modes.
/// cutoff must be 2 or 4. Throws std::invalid_argument otherwise.
PauliSum build_bosonic(int cutoff, double lambda);

/// Supersymmetric Lambda=2 Hamiltonian with mu = 1: six boson qubits then
/// three fermion qubits.
PauliSum build_susy(double lambda);

PauliSum build_hamiltonian(const ModelSpec& spec);

/// The n non-identity terms of largest magnitude, ordered by magnitude
/// (descending) with lexicographic tie breaks. Magnitudes equal to within
/// 1e-9 count as ties.
std::vector<PauliString> largest_terms(const PauliSum& h, std::size_t n);

/// Like largest_terms, but members of the tied group at the cut are taken
/// from `preferred` first (in the given order). Labels in `preferred` that
/// already rank above the cut are ignored. Throws std::invalid_argument when
/// a preferred label is absent or ranks below the cut, or when more preferred
/// labels tie at the cut than there are free slots.
std::vector<PauliString> largest_terms(const PauliSum& h, std::size_t n,
                                       const std::vector<std::string>& preferred);

}  // namespace mmvqe
