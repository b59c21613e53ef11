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

// Amplitude kernels. Every kernel has a plain serial reference and an OpenMP
// version. The OpenMP versions give bitwise identical results for any thread
// count: each output amplitude is written by exactly one iteration, and
// reductions are summed over fixed-size chunks in a fixed order.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmvqe/pauli.hpp"

namespace mmvqe::kernels {

/// A Pauli string in basis-index form: P|y> = coeff * (-1)^popcount(y & sign)
/// |y ^ flip>, with the i^(#Y) phase folded into coeff.
struct CompiledTerm {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  cplx coeff = 1.0;
};

struct CompiledSum {
  int n_qubits = 0;
  std::vector<CompiledTerm> terms;
};

CompiledTerm compile(const PauliString& p);
CompiledSum compile(const PauliSum& s);

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

/// Below this many amplitude updates a kernel stays on one thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

/// Amplitudes per reduction chunk.
inline constexpr std::size_t kReduceChunk = 512;

namespace serial {
void apply_sum(const CompiledSum& h, const cplx* in, cplx* out, std::size_t dim);
cplx expectation(const CompiledSum& h, const cplx* v, std::size_t dim);
cplx dot(const cplx* a, const cplx* b, std::size_t dim);
void apply_1q(cplx* v, std::size_t dim, std::uint64_t bit, const Mat2& m);
void apply_controlled_1q(cplx* v, std::size_t dim, std::uint64_t control,
                         std::uint64_t target, const Mat2& m);
void apply_pauli_rotation(cplx* v, std::size_t dim, const CompiledTerm& p,
                          double theta);
}  // namespace serial

namespace omp {
void apply_sum(const CompiledSum& h, const cplx* in, cplx* out, std::size_t dim);
cplx expectation(const CompiledSum& h, const cplx* v, std::size_t dim);
cplx dot(const cplx* a, const cplx* b, std::size_t dim);
void apply_1q(cplx* v, std::size_t dim, std::uint64_t bit, const Mat2& m);
void apply_controlled_1q(cplx* v, std::size_t dim, std::uint64_t control,
                         std::uint64_t target, const Mat2& m);
void apply_pauli_rotation(cplx* v, std::size_t dim, const CompiledTerm& p,
                          double theta);
}  // namespace omp

}  // namespace mmvqe::kernels
