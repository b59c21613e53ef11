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

#include "mmvqe/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "mmvqe/rng.hpp"

namespace mmvqe {

using kernels::Mat2;

StateVector::StateVector(int n_qubits)
    : n_(n_qubits), amps_(std::size_t{1} << n_qubits, 0.0) {
  if (n_qubits < 0 || n_qubits > 30) throw DimensionError("unsupported qubit count");
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionError("amplitude count is not 2^n_qubits");
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector v(n_qubits);
  v.amps_[0] = 0.0;
  v.amps_.at(index) = 1.0;
  return v;
}

double StateVector::norm() const {
  return std::sqrt(kernels::serial::dot(amps_.data(), amps_.data(), amps_.size()).real());
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

namespace {

const cplx kI(0.0, 1.0);

Mat2 ry(double t) {
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  return {c, -s, s, c};
}

Mat2 rz(double t) {
  return {std::exp(-0.5 * kI * t), 0.0, 0.0, std::exp(0.5 * kI * t)};
}

Mat2 rx(double t) {
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  return {c, -kI * s, -kI * s, c};
}

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Mat2 kPauliY = {0.0, -kI, kI, 0.0};
const Mat2 kPauliX = {0.0, 1.0, 1.0, 0.0};
const Mat2 kHadamard = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
// H * S^dagger: maps the Y eigenbasis onto the computational basis.
const Mat2 kHSdg = {kInvSqrt2, -kI * kInvSqrt2, kInvSqrt2, kI * kInvSqrt2};

void one(StateVector& v, std::uint64_t bit, const Mat2& m, ExecPolicy p) {
  if (p == ExecPolicy::Serial) kernels::serial::apply_1q(v.data(), v.dim(), bit, m);
  else kernels::omp::apply_1q(v.data(), v.dim(), bit, m);
}

void controlled(StateVector& v, std::uint64_t c, std::uint64_t t, const Mat2& m,
                ExecPolicy p) {
  if (p == ExecPolicy::Serial) kernels::serial::apply_controlled_1q(v.data(), v.dim(), c, t, m);
  else kernels::omp::apply_controlled_1q(v.data(), v.dim(), c, t, m);
}

double check_real(cplx e, double scale) {
  if (std::abs(e.imag()) > 1e-9 * std::max(1.0, scale)) {
    throw std::logic_error("expectation value has a non-negligible imaginary part");
  }
  return e.real();
}

}  // namespace

void apply_gate(StateVector& v, const Gate& g, double theta, ExecPolicy p) {
  const int n = v.n_qubits();
  switch (g.kind) {
    case GateKind::RY: one(v, qubit_bit(n, g.q0), ry(theta), p); break;
    case GateKind::RZ: one(v, qubit_bit(n, g.q0), rz(theta), p); break;
    case GateKind::Y: one(v, qubit_bit(n, g.q0), kPauliY, p); break;
    case GateKind::CX:
      controlled(v, qubit_bit(n, g.q0), qubit_bit(n, g.q1), kPauliX, p);
      break;
    case GateKind::CRX:
      controlled(v, qubit_bit(n, g.q0), qubit_bit(n, g.q1), rx(theta), p);
      break;
    case GateKind::PauliRot: {
      const kernels::CompiledTerm t = kernels::compile(g.pauli);
      if (p == ExecPolicy::Serial) kernels::serial::apply_pauli_rotation(v.data(), v.dim(), t, theta);
      else kernels::omp::apply_pauli_rotation(v.data(), v.dim(), t, theta);
      break;
    }
  }
}

StateVector simulate(const Circuit& c, std::span<const double> theta, ExecPolicy p) {
  if (theta.size() != static_cast<std::size_t>(c.n_params)) {
    throw std::invalid_argument("simulate: expected " + std::to_string(c.n_params) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  StateVector v(c.n_qubits);
  for (const auto& g : c.gates) {
    apply_gate(v, g, g.param_slot >= 0 ? theta[g.param_slot] : 0.0, p);
  }
  return v;
}

double expectation_exact(const StateVector& v, const PauliSum& h, ExecPolicy p) {
  if (h.n_qubits() != v.n_qubits()) {
    throw DimensionError("expectation: Hamiltonian and state sizes differ");
  }
  const kernels::CompiledSum ch = kernels::compile(h);
  const cplx e = p == ExecPolicy::Serial
                     ? kernels::serial::expectation(ch, v.data(), v.dim())
                     : kernels::omp::expectation(ch, v.data(), v.dim());
  return check_real(e, h.l1_norm());
}

void EstimatorConfig::validate() const {
  if (mode == EstimatorMode::Sampled && shots < 1) {
    throw std::invalid_argument("shots must be at least 1");
  }
}

Estimator::Estimator(const PauliSum& h, EstimatorConfig cfg) : h_(h), cfg_(cfg) {
  cfg_.validate();
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
  support_.resize(h.size());
  for (std::size_t t = 0; t < h.size(); ++t) {
    const auto& p = h.terms()[t];
    if (p.is_identity()) continue;
    const kernels::CompiledTerm ct = kernels::compile(p);
    const std::uint64_t supp = ct.flip | ct.sign;
    const std::uint64_t ybits = ct.flip & ct.sign;
    support_[t] = supp;
    if (cfg_.allocation == ShotAllocation::PerTerm) {
      auto [it, fresh] = index.try_emplace({ct.flip, ybits}, bases_.size());
      if (fresh) bases_.push_back({ct.flip, ybits, supp, {}});
      bases_[it->second].terms.push_back(t);
      continue;
    }
    auto fits = [&](const Basis& b) {
      const std::uint64_t o = supp & b.support;
      return (ct.flip & o) == (b.x & o) && (ybits & o) == (b.y & o);
    };
    auto it = std::find_if(bases_.begin(), bases_.end(), fits);
    if (it == bases_.end()) {
      bases_.push_back({ct.flip, ybits, supp, {t}});
    } else {
      it->x |= ct.flip;
      it->y |= ybits;
      it->support |= supp;
      it->terms.push_back(t);
    }
  }
}

std::vector<double> Estimator::sample_terms(const StateVector& v,
                                            std::uint64_t evaluation) const {
  if (v.n_qubits() != h_.n_qubits()) {
    throw DimensionError("estimator: Hamiltonian and state sizes differ");
  }
  std::vector<double> out(h_.size(), 0.0);
  for (std::size_t t = 0; t < h_.size(); ++t) {
    if (h_.terms()[t].is_identity()) out[t] = h_.terms()[t].coeff().real();
  }
  const std::size_t dim = v.dim();
  const std::uint64_t shots = static_cast<std::uint64_t>(cfg_.shots);
  const std::int64_t groups = static_cast<std::int64_t>(bases_.size());

#pragma omp parallel for schedule(dynamic) if (groups > 1 && dim >= 256)
  for (std::int64_t gi = 0; gi < groups; ++gi) {
    const Basis& b = bases_[static_cast<std::size_t>(gi)];
    std::vector<cplx> w(v.amplitudes());
    for (std::uint64_t m = b.x; m != 0; m &= m - 1) {
      const std::uint64_t bit = m & (~m + 1);
      kernels::serial::apply_1q(w.data(), dim, bit, (b.y & bit) ? kHSdg : kHadamard);
    }
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      acc += std::norm(w[i]);
      cdf[i] = acc;
    }
    auto draw = [&](SplitMix64& rng) {
      const double u = rng.uniform() * acc;
      const auto idx = static_cast<std::size_t>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      return std::min(idx, dim - 1);
    };
    auto mean = [&](std::uint64_t plus) {
      return (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
             static_cast<double>(shots);
    };
    if (cfg_.allocation == ShotAllocation::PerTerm) {
      for (std::size_t t : b.terms) {
        SplitMix64 rng(derive_key({cfg_.seed, evaluation, t}));
        std::uint64_t plus = 0;
        for (std::uint64_t s = 0; s < shots; ++s) {
          if (!(std::popcount(draw(rng) & support_[t]) & 1)) ++plus;
        }
        out[t] = h_.terms()[t].coeff().real() * mean(plus);
      }
    } else {
      SplitMix64 rng(derive_key({cfg_.seed, evaluation, b.terms.front()}));
      std::vector<std::uint64_t> plus(b.terms.size(), 0);
      for (std::uint64_t s = 0; s < shots; ++s) {
        const std::size_t idx = draw(rng);
        for (std::size_t k = 0; k < b.terms.size(); ++k) {
          if (!(std::popcount(idx & support_[b.terms[k]]) & 1)) ++plus[k];
        }
      }
      for (std::size_t k = 0; k < b.terms.size(); ++k) {
        out[b.terms[k]] = h_.terms()[b.terms[k]].coeff().real() * mean(plus[k]);
      }
    }
  }
  return out;
}

double Estimator::operator()(const StateVector& v, std::uint64_t evaluation) const {
  if (cfg_.mode == EstimatorMode::Exact) return expectation_exact(v, h_);
  const std::vector<double> parts = sample_terms(v, evaluation);
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

double expectation_sampled(const StateVector& v, const PauliSum& h,
                           const EstimatorConfig& cfg) {
  EstimatorConfig c = cfg;
  c.mode = EstimatorMode::Sampled;
  return Estimator(h, c)(v, 0);
}

}  // namespace mmvqe
