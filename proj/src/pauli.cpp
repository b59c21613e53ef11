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

#include "mmvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace mmvqe {
namespace {

// Letter index: 0=I, 1=X, 2=Y, 3=Z.
int letter_index(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

// Phase exponent k (phase = i^k) of the single-qubit product a*b.
constexpr int kPhase[4][4] = {
    {0, 0, 0, 0},  // I*
    {0, 0, 1, 3},  // X*I, X*X, X*Y=iZ, X*Z=-iY
    {0, 3, 0, 1},  // Y*X=-iZ, Y*Z=iX
    {0, 1, 3, 0},  // Z*X=iY, Z*Y=-iX
};

cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_width(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("qubit count out of range: " + std::to_string(n));
  }
}

std::uint64_t low_bits(int n) {
  return n >= 64 ? ~0ULL : ((1ULL << n) - 1);
}

struct LabelKey {
  std::uint64_t x, z;
  bool operator==(const LabelKey&) const = default;
};

struct LabelKeyHash {
  std::size_t operator()(const LabelKey& k) const {
    return std::hash<std::uint64_t>{}(k.x * 0x9E3779B97F4A7C15ULL ^ k.z);
  }
};

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x, std::uint64_t z,
                         cplx coeff)
    : n_(n_qubits), x_(x), z_(z), coeff_(coeff) {
  check_width(n_qubits);
  if (((x | z) & ~low_bits(n_qubits)) != 0) {
    throw DimensionError("Pauli mask has bits beyond n_qubits");
  }
}

PauliString PauliString::parse(std::string_view label, cplx coeff) {
  const int n = static_cast<int>(label.size());
  check_width(n);
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = 1ULL << q;
    switch (label[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli label: " + std::string(label));
    }
  }
  return {n, x, z, coeff};
}

PauliString PauliString::identity(int n_qubits, cplx coeff) {
  return {n_qubits, 0, 0, coeff};
}

char PauliString::at(int q) const {
  const std::uint64_t bit = 1ULL << q;
  return kLetters[letter_index(x_ & bit, z_ & bit)];
}

std::string PauliString::label() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = at(q);
  return s;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool label_less(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) return a.n_qubits() < b.n_qubits();
  const std::uint64_t diff = (a.x_mask() ^ b.x_mask()) | (a.z_mask() ^ b.z_mask());
  if (diff == 0) return false;
  const int q = std::countr_zero(diff);
  const std::uint64_t bit = 1ULL << q;
  return letter_index(a.x_mask() & bit, a.z_mask() & bit) <
         letter_index(b.x_mask() & bit, b.z_mask() & bit);
}

PauliString mul(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("mul: qubit counts differ");
  }
  int k = 0;
  const std::uint64_t both = (a.x_mask() | a.z_mask()) & (b.x_mask() | b.z_mask());
  for (std::uint64_t m = both; m != 0; m &= m - 1) {
    const std::uint64_t bit = m & (~m + 1);
    k += kPhase[letter_index(a.x_mask() & bit, a.z_mask() & bit)]
               [letter_index(b.x_mask() & bit, b.z_mask() & bit)];
  }
  return {a.n_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask(),
          a.coeff() * b.coeff() * i_pow(k)};
}

PauliString tensor(const PauliString& a, const PauliString& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_width(n);
  return {n, a.x_mask() | (b.x_mask() << a.n_qubits()),
          a.z_mask() | (b.z_mask() << a.n_qubits()), a.coeff() * b.coeff()};
}

std::string render_term(const PauliString& p) {
  return p.label() + ' ' + format_real(p.coeff().real()) + ' ' +
         format_real(p.coeff().imag());
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) {
  return os << render_term(p);
}

PauliSum simplify(const std::vector<PauliString>& terms, double tol,
                  int n_qubits) {
  PauliSum out(terms.empty() ? n_qubits : terms.front().n_qubits());
  std::unordered_map<LabelKey, std::size_t, LabelKeyHash> index;
  std::vector<PauliString> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.n_qubits() != out.n_) {
      throw DimensionError("simplify: mixed qubit counts");
    }
    const LabelKey key{t.x_mask(), t.z_mask()};
    auto [it, fresh] = index.try_emplace(key, merged.size());
    if (fresh) {
      merged.push_back(t);
    } else {
      auto& m = merged[it->second];
      m.set_coeff(m.coeff() + t.coeff());
    }
  }
  for (auto& t : merged) {
    if (std::abs(t.coeff()) >= tol && std::abs(t.coeff()) != 0.0) {
      out.terms_.push_back(t);
    }
  }
  std::sort(out.terms_.begin(), out.terms_.end(), label_less);
  return out;
}

PauliSum simplify(const PauliSum& s, double tol) {
  return simplify(s.terms(), tol, s.n_qubits());
}

cplx PauliSum::coeff(std::string_view label) const {
  const PauliString key = PauliString::parse(label);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, label_less);
  if (it != terms_.end() && it->same_label(key)) return it->coeff();
  return 0.0;
}

cplx PauliSum::identity_coeff() const {
  if (!terms_.empty() && terms_.front().is_identity()) {
    return terms_.front().coeff();
  }
  return 0.0;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliString& t) {
    return std::abs(t.coeff().imag()) < tol;
  });
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  if (!empty() && !o.empty() && n_ != o.n_) {
    throw DimensionError("sum: qubit counts differ");
  }
  std::vector<PauliString> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return simplify(all, kPruneTol, n_ != 0 ? n_ : o.n_);
}

PauliSum PauliSum::operator*(const PauliSum& o) const {
  if (n_ != o.n_) throw DimensionError("product: qubit counts differ");
  std::vector<PauliString> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) all.push_back(mul(a, b));
  }
  return simplify(all, kPruneTol, n_);
}

PauliSum PauliSum::operator*(cplx s) const {
  std::vector<PauliString> all = terms_;
  for (auto& t : all) t.set_coeff(t.coeff() * s);
  return simplify(all, kPruneTol, n_);
}

double PauliSum::l1_norm() const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += std::abs(t.coeff());
  return acc;
}

std::string PauliSum::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += render_term(t);
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text) {
  std::vector<PauliString> terms;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string label, re, im;
    if (!(ls >> label >> re >> im)) {
      throw std::invalid_argument("malformed Pauli term line: " + line);
    }
    char* end = nullptr;
    const double r = std::strtod(re.c_str(), &end);
    if (*end != '\0') throw std::invalid_argument("bad real part: " + re);
    const double i = std::strtod(im.c_str(), &end);
    if (*end != '\0') throw std::invalid_argument("bad imaginary part: " + im);
    terms.push_back(PauliString::parse(label, {r, i}));
    n = terms.back().n_qubits();
  }
  return simplify(terms, 0.0, n);
}

PauliSum decompose_dense(const DenseBlock& m, double tol) {
  const std::size_t dim = m.dim;
  if (dim < 2 || (dim & (dim - 1)) != 0 || dim > 16 ||
      m.entries.size() != dim * dim) {
    throw DimensionError("decompose_dense: dimension must be 2, 4, 8 or 16");
  }
  const int k = std::countr_zero(dim);
  std::vector<PauliString> terms;
  const std::uint64_t count = 1ULL << (2 * k);
  for (std::uint64_t code = 0; code < count; ++code) {
    PauliString p(k, code & low_bits(k), code >> k);
    const DenseBlock pd = to_dense(simplify({p}, 0.0, k));
    cplx tr = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) tr += pd(r, c) * m(c, r);
    }
    p.set_coeff(tr / static_cast<double>(dim));
    terms.push_back(p);
  }
  return simplify(terms, tol, k);
}

DenseBlock to_dense(const PauliSum& s) {
  const int n = s.n_qubits();
  if (n > kMaxDenseQubits) {
    throw CapacityError("to_dense: " + std::to_string(n) +
                        " qubits exceeds the dense limit");
  }
  const std::size_t dim = std::size_t{1} << n;
  DenseBlock out(dim);
  // Column c maps to row c ^ flip. Qubit q is bit (n-1-q) of the index.
  for (const auto& t : s.terms()) {
    std::uint64_t flip = 0, zs = 0;
    int ny = 0;
    for (int q = 0; q < n; ++q) {
      const char l = t.at(q);
      const std::uint64_t bit = 1ULL << (n - 1 - q);
      if (l == 'X' || l == 'Y') flip |= bit;
      if (l == 'Y' || l == 'Z') zs |= bit;
      if (l == 'Y') ++ny;
    }
    const cplx base = t.coeff() * i_pow(ny);
    for (std::size_t c = 0; c < dim; ++c) {
      // Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>.
      const double sign = (std::popcount(c & zs) & 1) ? -1.0 : 1.0;
      out(c ^ flip, c) += base * sign;
    }
  }
  return out;
}

}  // namespace mmvqe
