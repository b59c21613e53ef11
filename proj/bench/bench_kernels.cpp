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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>

#include "mmvqe/kernels.hpp"
#include "mmvqe/models.hpp"

namespace {

using mmvqe::cplx;

std::vector<cplx> random_amplitudes(std::size_t dim) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<cplx> v(dim);
  for (auto& a : v) a = {g(rng), g(rng)};
  return v;
}

const mmvqe::kernels::CompiledSum& bosonic4() {
  static const auto h = mmvqe::kernels::compile(mmvqe::build_bosonic(4, 1.0));
  return h;
}

template <bool Parallel>
void BM_ApplySum(benchmark::State& state) {
  const auto& h = bosonic4();
  const std::size_t dim = std::size_t{1} << 12;
  const auto in = random_amplitudes(dim);
  std::vector<cplx> out(dim);
  for (auto _ : state) {
    if constexpr (Parallel) {
      mmvqe::kernels::omp::apply_sum(h, in.data(), out.data(), dim);
    } else {
      mmvqe::kernels::serial::apply_sum(h, in.data(), out.data(), dim);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(h.terms.size()));
}

template <bool Parallel>
void BM_Expectation(benchmark::State& state) {
  const auto& h = bosonic4();
  const std::size_t dim = std::size_t{1} << 12;
  const auto v = random_amplitudes(dim);
  for (auto _ : state) {
    cplx e = Parallel ? mmvqe::kernels::omp::expectation(h, v.data(), dim)
                      : mmvqe::kernels::serial::expectation(h, v.data(), dim);
    benchmark::DoNotOptimize(e);
  }
}

template <bool Parallel>
void BM_Apply1q(benchmark::State& state) {
  const std::size_t dim = std::size_t{1} << state.range(0);
  auto v = random_amplitudes(dim);
  const double c = std::cos(0.3), s = std::sin(0.3);
  const mmvqe::kernels::Mat2 ry{{{c, 0}, {-s, 0}, {s, 0}, {c, 0}}};
  for (auto _ : state) {
    if constexpr (Parallel) {
      mmvqe::kernels::omp::apply_1q(v.data(), dim, 1, ry);
    } else {
      mmvqe::kernels::serial::apply_1q(v.data(), dim, 1, ry);
    }
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void BM_PauliRotation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::size_t dim = std::size_t{1} << n;
  auto v = random_amplitudes(dim);
  std::string label(n, 'I');
  label[0] = 'X';
  label[1] = 'Y';
  label[n - 1] = 'Z';
  const auto p = mmvqe::kernels::compile(mmvqe::PauliString::parse(label));
  for (auto _ : state) {
    if constexpr (Parallel) {
      mmvqe::kernels::omp::apply_pauli_rotation(v.data(), dim, p, 0.1);
    } else {
      mmvqe::kernels::serial::apply_pauli_rotation(v.data(), dim, p, 0.1);
    }
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(BM_ApplySum<false>)->Name("apply_sum/serial");
BENCHMARK(BM_ApplySum<true>)->Name("apply_sum/omp");
BENCHMARK(BM_Expectation<false>)->Name("expectation/serial");
BENCHMARK(BM_Expectation<true>)->Name("expectation/omp");
BENCHMARK(BM_Apply1q<false>)->Name("apply_1q/serial")->Arg(12)->Arg(18);
BENCHMARK(BM_Apply1q<true>)->Name("apply_1q/omp")->Arg(12)->Arg(18);
BENCHMARK(BM_PauliRotation<false>)->Name("pauli_rotation/serial")->Arg(12)->Arg(18);
BENCHMARK(BM_PauliRotation<true>)->Name("pauli_rotation/omp")->Arg(12)->Arg(18);

BENCHMARK_MAIN();
