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

#include <Eigen/Sparse>

#include "support.hpp"

namespace mmvqe::testing {

inline int eps(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return (a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0) ? 1 : -1;
}

inline Dense lowering(int cutoff) {
  Dense a = Dense::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

// Dense bosonic Hamiltonian written directly from the mode operators.
inline Dense bosonic_oracle(double lambda) {
  const int modes = 6;
  const Dense a = lowering(2);
  std::vector<Dense> x(modes);
  const Eigen::Index dim = 64;
  Dense h = Dense::Zero(dim, dim);
  for (int m = 0; m < modes; ++m) {
    const Dense am = place(a, m, modes);
    x[m] = am + am.adjoint();
    h += am.adjoint() * am + 0.5 * Dense::Identity(dim, dim);
  }
  const double g2 = lambda / 2.0;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Dense o = Dense::Zero(dim, dim);
        for (int al = 0; al < 3; ++al)
          for (int be = 0; be < 3; ++be)
            if (eps(al, be, c)) o += std::sqrt(2.0) * eps(al, be, c) * x[3 * i + al] * x[3 * j + be];
        h += g2 / 16.0 * o * o;
      }
    }
  }
  return h;
}

// Dense supersymmetric Hamiltonian with bosons on the first six factors and
// Jordan-Wigner fermions on the last three. x1_sign flips the first matrix.
// Products are formed in sparse storage; the operators are very sparse.
inline Dense susy_oracle(double lambda, double x1_sign) {
  using Sparse = Eigen::SparseMatrix<cplx>;
  const int n = 9;
  const Eigen::Index dim = 512;
  const Dense a = lowering(2);
  Dense zmat(2, 2);
  zmat << 1, 0, 0, -1;
  Sparse id(dim, dim);
  id.setIdentity();
  std::vector<Sparse> b(6), X(6), c(3);
  Sparse h = -3.0 * id;
  for (int m = 0; m < 6; ++m) {
    b[m] = place(a, m, n).sparseView();
    X[m] = (b[m] + Sparse(b[m].adjoint())) / std::sqrt(2.0);
    h += Sparse(b[m].adjoint()) * b[m] + 0.5 * id;
  }
  for (int f = 0; f < 3; ++f) {
    Dense op = Dense::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
      if (k < 6 + f && k >= 6) op = kron(op, zmat);
      else if (k == 6 + f) op = kron(op, a);
      else op = kron(op, Dense::Identity(2, 2));
    }
    c[f] = op.sparseView();
    h += 1.5 * Sparse(c[f].adjoint()) * c[f];
  }
  const double g2 = lambda / 2.0, g = std::sqrt(g2);
  auto x1 = [&](int al) -> Sparse { return x1_sign * X[al]; };
  auto x2 = [&](int al) -> const Sparse& { return X[3 + al]; };
  for (int al = 0; al < 3; ++al)
    for (int be = 0; be < 3; ++be) {
      if (al == be) continue;
      h += g2 * Sparse(x1(al) * x1(al)) * Sparse(x2(be) * x2(be));
      if (al < be) h -= 2.0 * g2 * Sparse(x1(al) * x1(be)) * Sparse(x2(al) * x2(be));
    }
  const cplx i1(0.0, 1.0);
  Sparse y(dim, dim);
  for (int al = 0; al < 3; ++al)
    for (int be = 0; be < 3; ++be)
      for (int ga = 0; ga < 3; ++ga) {
        if (!eps(al, be, ga)) continue;
        const Sparse up = Sparse(c[be].adjoint()) * Sparse(c[ga].adjoint());
        const Sparse down = c[be] * c[ga];
        const Sparse plus = x1(al) + i1 * x2(al);
        const Sparse minus = i1 * x2(al) - x1(al);
        y += double(eps(al, be, ga)) * (Sparse(minus * down) - Sparse(plus * up));
      }
  h += i1 * g / std::sqrt(2.0) * y;
  return Dense(h);
}

}  // namespace mmvqe::testing
