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

#include "mmvqe/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mmvqe/state.hpp"

namespace mmvqe::kernels {
namespace {

using index_t = std::int64_t;

inline double parity_sign(std::uint64_t y, std::uint64_t mask) {
  return (std::popcount(y & mask) & 1) ? -1.0 : 1.0;
}

// Inserts a zero at bit position `bit` (a power of two) of k.
inline std::uint64_t insert_zero(std::uint64_t k, std::uint64_t bit) {
  const std::uint64_t low = k & (bit - 1);
  return ((k - low) << 1) | low;
}

inline cplx gather(const CompiledSum& h, const cplx* in, std::uint64_t y) {
  cplx acc = 0.0;
  for (const auto& t : h.terms) {
    const std::uint64_t src = y ^ t.flip;
    acc += t.coeff * parity_sign(src, t.sign) * in[src];
  }
  return acc;
}

inline void pair_update(cplx* v, std::uint64_t i, std::uint64_t bit, const Mat2& m) {
  const cplx a = v[i];
  const cplx b = v[i | bit];
  v[i] = m[0] * a + m[1] * b;
  v[i | bit] = m[2] * a + m[3] * b;
}

inline std::uint64_t controlled_index(std::uint64_t k, std::uint64_t control,
                                      std::uint64_t target) {
  const std::uint64_t lo = control < target ? control : target;
  const std::uint64_t hi = control < target ? target : control;
  return insert_zero(insert_zero(k, lo), hi) | control;
}

struct Rotation {
  double c, s;
  std::uint64_t top;  // highest flipped bit, 0 for diagonal strings
};

inline Rotation make_rotation(const CompiledTerm& p, double theta) {
  return {std::cos(0.5 * theta), std::sin(0.5 * theta),
          p.flip ? std::bit_floor(p.flip) : 0};
}

inline void rotate_pair(cplx* v, std::uint64_t y, const CompiledTerm& p,
                        const Rotation& r) {
  const cplx mis(0.0, -r.s);
  const std::uint64_t z = y ^ p.flip;
  const cplx a = v[y];
  const cplx b = v[z];
  v[y] = r.c * a + mis * p.coeff * parity_sign(z, p.sign) * b;
  v[z] = r.c * b + mis * p.coeff * parity_sign(y, p.sign) * a;
}

inline void rotate_diag(cplx* v, std::uint64_t y, const CompiledTerm& p,
                        const Rotation& r) {
  v[y] *= r.c + cplx(0.0, -r.s) * p.coeff * parity_sign(y, p.sign);
}

}  // namespace

CompiledTerm compile(const PauliString& p) {
  const int n = p.n_qubits();
  CompiledTerm t;
  int ny = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t src = 1ULL << q;
    const bool x = p.x_mask() & src, z = p.z_mask() & src;
    if (x) t.flip |= qubit_bit(n, q);
    if (z) t.sign |= qubit_bit(n, q);
    if (x && z) ++ny;
  }
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  t.coeff = p.coeff() * kIPow[ny & 3];
  return t;
}

CompiledSum compile(const PauliSum& s) {
  CompiledSum out;
  out.n_qubits = s.n_qubits();
  out.terms.reserve(s.size());
  for (const auto& t : s.terms()) out.terms.push_back(compile(t));
  return out;
}

namespace serial {

void apply_sum(const CompiledSum& h, const cplx* in, cplx* out, std::size_t dim) {
  for (std::uint64_t y = 0; y < dim; ++y) out[y] = gather(h, in, y);
}

cplx expectation(const CompiledSum& h, const cplx* v, std::size_t dim) {
  cplx acc = 0.0;
  for (std::uint64_t y = 0; y < dim; ++y) acc += std::conj(v[y]) * gather(h, v, y);
  return acc;
}

cplx dot(const cplx* a, const cplx* b, std::size_t dim) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

void apply_1q(cplx* v, std::size_t dim, std::uint64_t bit, const Mat2& m) {
  for (std::uint64_t k = 0; k < dim / 2; ++k) pair_update(v, insert_zero(k, bit), bit, m);
}

void apply_controlled_1q(cplx* v, std::size_t dim, std::uint64_t control,
                         std::uint64_t target, const Mat2& m) {
  for (std::uint64_t k = 0; k < dim / 4; ++k) {
    pair_update(v, controlled_index(k, control, target), target, m);
  }
}

void apply_pauli_rotation(cplx* v, std::size_t dim, const CompiledTerm& p,
                          double theta) {
  const Rotation r = make_rotation(p, theta);
  if (r.top == 0) {
    for (std::uint64_t y = 0; y < dim; ++y) rotate_diag(v, y, p, r);
    return;
  }
  for (std::uint64_t k = 0; k < dim / 2; ++k) rotate_pair(v, insert_zero(k, r.top), p, r);
}

}  // namespace serial

namespace omp {

void apply_sum(const CompiledSum& h, const cplx* in, cplx* out, std::size_t dim) {
  const index_t n = static_cast<index_t>(dim);
#pragma omp parallel for schedule(static) if (dim * h.terms.size() >= kParallelThreshold)
  for (index_t y = 0; y < n; ++y) out[y] = gather(h, in, static_cast<std::uint64_t>(y));
}

cplx expectation(const CompiledSum& h, const cplx* v, std::size_t dim) {
  const index_t chunks = static_cast<index_t>((dim + kReduceChunk - 1) / kReduceChunk);
  std::vector<cplx> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) if (dim * h.terms.size() >= kParallelThreshold)
  for (index_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kReduceChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kReduceChunk, dim);
    cplx acc = 0.0;
    for (std::uint64_t y = lo; y < hi; ++y) acc += std::conj(v[y]) * gather(h, v, y);
    partial[c] = acc;
  }
  cplx total = 0.0;
  for (const cplx& p : partial) total += p;
  return total;
}

cplx dot(const cplx* a, const cplx* b, std::size_t dim) {
  const index_t chunks = static_cast<index_t>((dim + kReduceChunk - 1) / kReduceChunk);
  std::vector<cplx> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (index_t c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
    const std::size_t hi = std::min<std::size_t>(lo + kReduceChunk, dim);
    cplx acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += std::conj(a[i]) * b[i];
    partial[c] = acc;
  }
  cplx total = 0.0;
  for (const cplx& p : partial) total += p;
  return total;
}

void apply_1q(cplx* v, std::size_t dim, std::uint64_t bit, const Mat2& m) {
  const index_t n = static_cast<index_t>(dim / 2);
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (index_t k = 0; k < n; ++k) {
    pair_update(v, insert_zero(static_cast<std::uint64_t>(k), bit), bit, m);
  }
}

void apply_controlled_1q(cplx* v, std::size_t dim, std::uint64_t control,
                         std::uint64_t target, const Mat2& m) {
  const index_t n = static_cast<index_t>(dim / 4);
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (index_t k = 0; k < n; ++k) {
    pair_update(v, controlled_index(static_cast<std::uint64_t>(k), control, target),
                target, m);
  }
}

void apply_pauli_rotation(cplx* v, std::size_t dim, const CompiledTerm& p,
                          double theta) {
  const Rotation r = make_rotation(p, theta);
  if (r.top == 0) {
    const index_t n = static_cast<index_t>(dim);
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
    for (index_t y = 0; y < n; ++y) rotate_diag(v, static_cast<std::uint64_t>(y), p, r);
    return;
  }
  const index_t n = static_cast<index_t>(dim / 2);
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (index_t k = 0; k < n; ++k) {
    rotate_pair(v, insert_zero(static_cast<std::uint64_t>(k), r.top), p, r);
  }
}

}  // namespace omp

}  // namespace mmvqe::kernels
