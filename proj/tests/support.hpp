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

#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mmvqe/pauli.hpp"
#include "mmvqe/state.hpp"

namespace mmvqe::testing {

inline const std::array<double, 4> kCouplings = {0.2, 0.5, 1.0, 2.0};

/// One row of a coefficient table; NaN marks an empty cell.
struct TableRow {
  std::string label;
  std::array<double, 4> coeff;
};

inline std::vector<TableRow> load_table(const std::string& name) {
  const std::string path = std::string(MMVQE_TEST_DATA) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test data " + path);
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    TableRow r;
    ss >> r.label;
    for (double& c : r.coeff) {
      std::string cell;
      ss >> cell;
      c = cell == "nan" ? std::nan("") : std::stod(cell);
    }
    rows.push_back(r);
  }
  return rows;
}

using Dense = Eigen::MatrixXcd;

inline Dense to_eigen(const DenseBlock& b) {
  Dense m(b.dim, b.dim);
  for (std::size_t r = 0; r < b.dim; ++r)
    for (std::size_t c = 0; c < b.dim; ++c) m(r, c) = b(r, c);
  return m;
}

inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Places `op` at factor `pos` of `n` factors; other factors are `fill` or identity.
inline Dense place(const Dense& op, int pos, int n, const Dense* before = nullptr) {
  const Eigen::Index d = op.rows();
  Dense out = Dense::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    if (k == pos) out = kron(out, op);
    else if (k < pos && before) out = kron(out, *before);
    else out = kron(out, Dense::Identity(d, d));
  }
  return out;
}

inline StateVector random_state(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n_qubits);
  for (auto& x : a) x = {g(rng), g(rng)};
  StateVector v(n_qubits, std::move(a));
  v.normalize();
  return v;
}

/// Random sum of `terms` strings on n qubits with real coefficients in [-1, 1].
inline PauliSum random_sum(int n, int terms, std::mt19937_64& rng, bool real = true) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PauliString> out;
  for (int t = 0; t < terms; ++t) {
    std::string label(n, 'I');
    for (auto& ch : label) ch = "IXYZ"[letter(rng)];
    out.push_back(PauliString::parse(label, real ? cplx(u(rng), 0.0) : cplx(u(rng), u(rng))));
  }
  return simplify(out, 0.0, n);
}

}  // namespace mmvqe::testing
