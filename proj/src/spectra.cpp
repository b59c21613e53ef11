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

#include "mmvqe/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "mmvqe/kernels.hpp"
#include "mmvqe/rng.hpp"

namespace mmvqe {
namespace {

void require_hermitian(const PauliSum& h) {
  if (!h.is_hermitian(kPruneTol)) {
    throw std::invalid_argument("Hamiltonian has complex coefficients");
  }
}

double smallest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const Eigen::Index k = static_cast<Eigen::Index>(alpha.size());
  if (k == 1) return alpha[0];
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const DenseBlock m = to_dense(h);
  const Eigen::Index d = static_cast<Eigen::Index>(m.dim);
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) out(r, c) = m(r, c);
  }
  return out;
}

}  // namespace

StateVector apply(const PauliSum& h, const StateVector& v) {
  if (h.n_qubits() != v.n_qubits()) {
    throw DimensionError("apply: Hamiltonian and state sizes differ");
  }
  const kernels::CompiledSum ch = kernels::compile(h);
  std::vector<cplx> out(v.dim());
  kernels::omp::apply_sum(ch, v.data(), out.data(), v.dim());
  return StateVector(v.n_qubits(), std::move(out));
}

GroundEnergy ground_energy(const PauliSum& h, const LanczosOptions& opts) {
  require_hermitian(h);
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  const kernels::CompiledSum ch = kernels::compile(h);

  SplitMix64 rng(derive_key({opts.seed, 0x4C414E43ULL}));
  std::vector<cplx> q(dim);
  for (auto& a : q) a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  double nrm = std::sqrt(kernels::omp::dot(q.data(), q.data(), dim).real());
  for (auto& a : q) a /= nrm;

  std::vector<std::vector<cplx>> basis;
  std::vector<double> alpha, beta;
  std::vector<cplx> w(dim);
  double previous = 0.0;
  for (int j = 0; j < opts.max_iterations; ++j) {
    basis.push_back(q);
    kernels::omp::apply_sum(ch, q.data(), w.data(), dim);
    const double a = kernels::omp::dot(q.data(), w.data(), dim).real();
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const cplx overlap = kernels::omp::dot(b.data(), w.data(), dim);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= overlap * b[i];
      }
    }
    const double ritz = smallest_ritz(alpha, beta);
    const double bnorm = std::sqrt(kernels::omp::dot(w.data(), w.data(), dim).real());
    const bool invariant = bnorm < 1e-12 * std::max(1.0, std::abs(a));
    const bool exhausted = basis.size() == dim;
    if (invariant || exhausted || (j > 0 && std::abs(ritz - previous) < opts.tol)) {
      return {ritz, j + 1, opts.seed};
    }
    previous = ritz;
    beta.push_back(bnorm);
    for (std::size_t i = 0; i < dim; ++i) q[i] = w[i] / bnorm;
  }
  throw ConvergenceError("Lanczos did not converge within " +
                         std::to_string(opts.max_iterations) +
                         " iterations (last Ritz value " + std::to_string(previous) +
                         ")");
}

DenseGroundState dense_ground_state(const PauliSum& h) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
  DenseGroundState out;
  out.energy = es.eigenvalues()(0);
  const auto v = es.eigenvectors().col(0);
  out.vector.assign(v.data(), v.data() + v.size());
  return out;
}

std::vector<double> dense_spectrum(const PauliSum& h) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h),
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace mmvqe
