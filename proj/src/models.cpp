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

#include "mmvqe/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmvqe {
namespace {

constexpr int kModes = 6;    // 2 matrices x 3 colours
constexpr int kColours = 3;

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // Cyclic permutations of (0,1,2) are even.
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

PauliSum scalar(int n, cplx c) {
  return simplify({PauliString::identity(n, c)}, 0.0, n);
}

// Magnitude rounded to 1e-9 so near-equal coefficients tie exactly.
long long magnitude_key(const PauliString& t) {
  return std::llround(std::abs(t.coeff()) * 1e9);
}

std::vector<PauliString> ranked_non_identity(const PauliSum& h) {
  std::vector<PauliString> out;
  for (const auto& t : h.terms()) {
    if (!t.is_identity()) out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PauliString& a, const PauliString& b) {
                     const auto ka = magnitude_key(a), kb = magnitude_key(b);
                     if (ka != kb) return ka > kb;
                     return label_less(a, b);
                   });
  return out;
}

}  // namespace

int ModelSpec::n_qubits() const {
  switch (model) {
    case Model::BosonicL2: return 6;
    case Model::BosonicL4: return 12;
    case Model::SusyL2: return 9;
  }
  return 0;
}

void ModelSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("coupling lambda must be positive and finite");
  }
}

std::string model_name(Model m) {
  switch (m) {
    case Model::BosonicL2: return "bosonic2";
    case Model::BosonicL4: return "bosonic4";
    case Model::SusyL2: return "susy2";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::BosonicL2, Model::BosonicL4, Model::SusyL2}) {
    if (model_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown model: " + std::string(name));
}

std::vector<std::string> model_names() {
  return {"bosonic2", "bosonic4", "susy2"};
}

DenseBlock truncated_annihilation(int cutoff) {
  if (cutoff != 2 && cutoff != 4) {
    throw std::invalid_argument("unsupported cutoff " + std::to_string(cutoff));
  }
  DenseBlock a(static_cast<std::size_t>(cutoff));
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ModeOperators mode_operators(int cutoff) {
  const DenseBlock a = truncated_annihilation(cutoff);
  DenseBlock ad(a.dim), num(a.dim), x(a.dim);
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t c = 0; c < a.dim; ++c) ad(r, c) = std::conj(a(c, r));
  }
  for (std::size_t r = 0; r < a.dim; ++r) {
    num(r, r) = static_cast<double>(r);
    for (std::size_t c = 0; c < a.dim; ++c) x(r, c) = a(r, c) + ad(r, c);
  }
  ModeOperators ops;
  ops.cutoff = cutoff;
  ops.qubits = cutoff == 2 ? 1 : 2;
  ops.annihilation = decompose_dense(a);
  ops.number = decompose_dense(num);
  ops.position = decompose_dense(x);
  return ops;
}

PauliSum embed(const PauliSum& local, int n_qubits, int offset) {
  const int k = local.n_qubits();
  if (offset < 0 || offset + k > n_qubits) {
    throw DimensionError("embed: local operator does not fit");
  }
  std::vector<PauliString> terms;
  for (const auto& t : local.terms()) {
    terms.emplace_back(n_qubits, t.x_mask() << offset, t.z_mask() << offset,
                       t.coeff());
  }
  return simplify(terms, 0.0, n_qubits);
}

PauliSum jw_annihilation(int n_qubits, int offset, int index) {
  // Z string on earlier fermions, sigma+ = |0><1| = (X + iY)/2 on this one.
  std::string x_label(n_qubits, 'I'), y_label(n_qubits, 'I');
  for (int j = 0; j < index; ++j) x_label[offset + j] = y_label[offset + j] = 'Z';
  x_label[offset + index] = 'X';
  y_label[offset + index] = 'Y';
  return simplify({PauliString::parse(x_label, 0.5),
                   PauliString::parse(y_label, cplx(0.0, 0.5))},
                  0.0, n_qubits);
}

PauliSum build_bosonic(int cutoff, double lambda) {
  ModelSpec{cutoff == 4 ? Model::BosonicL4 : Model::BosonicL2, lambda}.validate();
  const ModeOperators local = mode_operators(cutoff);
  const int q = local.qubits;
  const int n = kModes * q;
  const double g2 = lambda / 2.0;
  const double f = std::sqrt(2.0);

  std::vector<PauliSum> x(kModes);
  PauliSum h = scalar(n, 0.0);
  for (int mode = 0; mode < kModes; ++mode) {
    x[mode] = embed(local.position, n, mode * q);
    h = h + embed(local.number, n, mode * q) + scalar(n, 0.5);
  }
  auto xm = [&](int matrix, int colour) -> const PauliSum& {
    return x[matrix * kColours + colour];
  };
  for (int gamma = 0; gamma < kColours; ++gamma) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        PauliSum o = scalar(n, 0.0);
        for (int alpha = 0; alpha < kColours; ++alpha) {
          for (int beta = 0; beta < kColours; ++beta) {
            const int eps = levi_civita(alpha, beta, gamma);
            if (eps == 0) continue;
            o = o + (xm(i, alpha) * xm(j, beta)) * (f * eps);
          }
        }
        h = h + (o * o) * (g2 / 16.0);
      }
    }
  }
  return simplify(h, kPruneTol);
}

PauliSum build_susy(double lambda) {
  ModelSpec{Model::SusyL2, lambda}.validate();
  constexpr int n = 9;
  constexpr int fermion_offset = 6;
  const double g2 = lambda / 2.0;
  const double g = std::sqrt(g2);
  const ModeOperators local = mode_operators(2);
  const cplx I(0.0, 1.0);

  // X = (a + a^dagger)/sqrt(2) on boson qubit 3*matrix + colour.
  std::vector<PauliSum> xb(kModes);
  PauliSum h = scalar(n, -3.0);
  for (int mode = 0; mode < kModes; ++mode) {
    xb[mode] = embed(local.position, n, mode) * (1.0 / std::sqrt(2.0));
    h = h + embed(local.number, n, mode) + scalar(n, 0.5);
  }
  auto X = [&](int matrix, int colour) -> const PauliSum& {
    return xb[matrix * kColours + colour];
  };

  std::vector<PauliSum> c(kColours), cd(kColours);
  for (int a = 0; a < kColours; ++a) {
    c[a] = jw_annihilation(n, fermion_offset, a);
    std::vector<PauliString> t = c[a].terms();
    for (auto& p : t) p.set_coeff(std::conj(p.coeff()));
    cd[a] = simplify(t, 0.0, n);
    h = h + (cd[a] * c[a]) * 1.5;
  }

  for (int a = 0; a < kColours; ++a) {
    for (int b = 0; b < kColours; ++b) {
      if (a == b) continue;
      h = h + (X(0, a) * X(0, a) * X(1, b) * X(1, b)) * g2;
      if (a < b) h = h + (X(0, a) * X(0, b) * X(1, a) * X(1, b)) * (-2.0 * g2);
    }
  }

  PauliSum yukawa = scalar(n, 0.0);
  for (int a = 0; a < kColours; ++a) {
    // Sign of the first-matrix coordinate chosen to match the published
    // coefficient table; X1 -> -X1 is a symmetry, so the spectrum is unchanged.
    const PauliSum creation_part = X(0, a) + X(1, a) * -I;
    const PauliSum annihilation_part = X(0, a) + X(1, a) * I;
    for (int b = 0; b < kColours; ++b) {
      for (int gm = 0; gm < kColours; ++gm) {
        const int eps = levi_civita(a, b, gm);
        if (eps == 0) continue;
        yukawa = yukawa + (creation_part * cd[b] * cd[gm]) * static_cast<double>(eps) +
                 (annihilation_part * c[b] * c[gm]) * static_cast<double>(eps);
      }
    }
  }
  h = h + yukawa * (I * g / std::sqrt(2.0));
  return simplify(h, kPruneTol);
}

PauliSum build_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  switch (spec.model) {
    case Model::BosonicL2: return build_bosonic(2, spec.lambda);
    case Model::BosonicL4: return build_bosonic(4, spec.lambda);
    case Model::SusyL2: return build_susy(spec.lambda);
  }
  throw std::invalid_argument("unknown model");
}

std::vector<PauliString> largest_terms(const PauliSum& h, std::size_t n) {
  return largest_terms(h, n, {});
}

std::vector<PauliString> largest_terms(const PauliSum& h, std::size_t n,
                                       const std::vector<std::string>& preferred) {
  std::vector<PauliString> ranked = ranked_non_identity(h);
  if (n == 0 || n > ranked.size()) {
    throw std::invalid_argument("largest_terms: requested " + std::to_string(n) +
                                " of " + std::to_string(ranked.size()) +
                                " non-identity terms");
  }
  const long long cut = magnitude_key(ranked[n - 1]);
  std::vector<PauliString> out, tied;
  for (const auto& t : ranked) {
    const long long k = magnitude_key(t);
    if (k > cut) out.push_back(t);
    else if (k == cut) tied.push_back(t);
  }
  const std::size_t free_slots = n - out.size();

  std::vector<PauliString> picks;
  for (const auto& label : preferred) {
    const PauliString key = PauliString::parse(label);
    auto in = [&](const std::vector<PauliString>& v) {
      return std::find_if(v.begin(), v.end(), [&](const PauliString& t) {
        return t.same_label(key);
      });
    };
    if (in(out) != out.end()) continue;
    auto it = in(tied);
    if (it == tied.end()) {
      throw std::invalid_argument("largest_terms: preferred operator " + label +
                                  " is not tied at the cut");
    }
    if (in(picks) == picks.end()) picks.push_back(*it);
  }
  if (picks.size() > free_slots) {
    throw std::invalid_argument("largest_terms: too many preferred operators");
  }
  for (const auto& t : tied) {
    if (picks.size() == free_slots) break;
    const bool taken = std::any_of(picks.begin(), picks.end(), [&](const PauliString& p) {
      return p.same_label(t);
    });
    if (!taken) picks.push_back(t);
  }
  out.insert(out.end(), picks.begin(), picks.end());
  return out;
}

}  // namespace mmvqe
