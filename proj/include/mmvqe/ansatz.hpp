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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmvqe/models.hpp"
#include "mmvqe/pauli.hpp"

namespace mmvqe {

enum class GateKind { RY, RZ, Y, CX, CRX, PauliRot };

struct Gate {
  GateKind kind = GateKind::RY;
  int q0 = -1;  // target, or control for two-qubit gates
  int q1 = -1;  // target of two-qubit gates
  PauliString pauli;  // PauliRot only, unit coefficient
  int param_slot = -1;  // -1 for fixed gates

  bool operator==(const Gate& o) const {
    return kind == o.kind && q0 == o.q0 && q1 == o.q1 && pauli == o.pauli &&
           param_slot == o.param_slot;
  }
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int n_params = 0;

  /// Checks qubit ranges and that slots 0..n_params-1 each occur once.
  void validate() const;
  std::map<std::string, int> gate_counts() const;
};

enum class Family { EfficientSU2, TwoLocal, EvolvedOperator };
enum class Rotation { Ry, Rz, RyRz, RyY };
enum class Entanglement { Circular, Full };

std::string family_name(Family f);
std::string rotation_name(Rotation r);

struct AnsatzSpec {
  std::string name;
  Family family = Family::EfficientSU2;
  int n_qubits = 0;
  Rotation rotation = Rotation::Ry;
  Entanglement entanglement = Entanglement::Circular;
  int depth = 1;
  std::vector<PauliString> operators;  // EvolvedOperator only
};

/// (d+1) rotation layers with CX entanglers between them.
Circuit build_efficient_su2(int n_qubits, Rotation rotation,
                            Entanglement entanglement, int depth);
/// Same layout with parameterized CRX entanglers.
Circuit build_two_local(int n_qubits, Rotation rotation, Entanglement entanglement,
                        int depth);
/// `depth` repetitions of one PauliRot per operator. Coefficients are
/// replaced by 1. Throws std::invalid_argument for an empty list or an
/// identity operator.
Circuit build_evolved_operator(const std::vector<PauliString>& operators, int depth);

Circuit build_circuit(const AnsatzSpec& spec);

/// Entangler pairs (control, target) in application order.
std::vector<std::pair<int, int>> entangler_pairs(int n_qubits, Entanglement e);

/// Named variants studied for a model. Evolved-operator lists depend on the
/// coupling for BosonicL4.
std::vector<AnsatzSpec> catalog(const ModelSpec& model);

class UnknownAnsatz : public std::invalid_argument {
 public:
  UnknownAnsatz(const std::string& name, std::vector<std::string> valid);
  const std::vector<std::string>& valid_names() const { return valid_; }

 private:
  std::vector<std::string> valid_;
};

/// Looks a variant up by name; throws UnknownAnsatz.
AnsatzSpec find_ansatz(const ModelSpec& model, const std::string& name);

}  // namespace mmvqe
