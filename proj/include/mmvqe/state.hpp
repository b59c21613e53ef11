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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmvqe/pauli.hpp"

namespace mmvqe {

/// 2^n amplitudes. Qubit q is bit (n - 1 - q) of the basis index, so qubit 0
/// is the most significant bit and the first tensor factor.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  cplx* data() { return amps_.data(); }
  const cplx* data() const { return amps_.data(); }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<cplx>& amplitudes() const { return amps_; }

  double norm() const;
  void normalize();

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

/// Basis-index bit that holds qubit q.
inline std::uint64_t qubit_bit(int n_qubits, int q) {
  return 1ULL << (n_qubits - 1 - q);
}

}  // namespace mmvqe
