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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmvqe {

using cplx = std::complex<double>;

/// Largest register a PauliString can describe (one bit per qubit in a mask).
inline constexpr int kMaxQubits = 63;

/// Qubit count limit for dense conversions.
inline constexpr int kMaxDenseQubits = 9;

/// Default pruning tolerance used when simplifying Hamiltonians.
inline constexpr double kPruneTol = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Tensor product of single-qubit Paulis with a complex coefficient.
///
/// Qubit q is the q-th character of the label, counted from the left, and
/// the q-th tensor factor. Internally each qubit is a pair of bits
/// (x, z): I=(0,0), X=(1,0), Y=(1,1), Z=(0,1). Bit q of each mask is qubit q.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z, cplx coeff = 1.0);

  /// Parses a label such as "IXYZ". Throws std::invalid_argument on bad input.
  static PauliString parse(std::string_view label, cplx coeff = 1.0);
  static PauliString identity(int n_qubits, cplx coeff = 1.0);

  int n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  cplx coeff() const { return coeff_; }
  void set_coeff(cplx c) { coeff_ = c; }

  /// Pauli letter on qubit q.
  char at(int q) const;
  std::string label() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  /// Number of non-identity factors.
  int weight() const;

  /// Equal labels; coefficients ignored.
  bool same_label(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator==(const PauliString& o) const {
    return same_label(o) && coeff_ == o.coeff_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  cplx coeff_ = 1.0;
};

/// Lexicographic label order with I < X < Y < Z, qubit 0 most significant.
bool label_less(const PauliString& a, const PauliString& b);

/// Product a*b including the accumulated phase in {1, -1, i, -i}.
PauliString mul(const PauliString& a, const PauliString& b);

/// Concatenation a (x) b; coefficients multiply.
PauliString tensor(const PauliString& a, const PauliString& b);

/// Renders "<label> <real> <imag>".
std::string render_term(const PauliString& p);

/// Simplified linear combination of Pauli strings in canonical order.
///
/// Terms are unique by label, sorted by label_less, and no coefficient has
/// magnitude below the tolerance that was used to simplify.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of `label`, zero when absent.
  cplx coeff(std::string_view label) const;
  /// Coefficient of the all-identity term.
  cplx identity_coeff() const;

  /// All imaginary parts below tol.
  bool is_hermitian(double tol = kPruneTol) const;

  PauliSum operator+(const PauliSum& o) const;
  PauliSum operator*(const PauliSum& o) const;
  PauliSum operator*(cplx s) const;

  /// Sum of |coeff| over all terms.
  double l1_norm() const;

  std::string to_text() const;
  static PauliSum from_text(std::string_view text);

  friend PauliSum simplify(const std::vector<PauliString>& terms, double tol,
                           int n_qubits);

 private:
  int n_ = 0;
  std::vector<PauliString> terms_;
};

/// Merges equal labels, drops |coeff| < tol and sorts canonically.
/// n_qubits is only consulted when `terms` is empty.
PauliSum simplify(const std::vector<PauliString>& terms, double tol = kPruneTol,
                  int n_qubits = 0);
PauliSum simplify(const PauliSum& s, double tol = kPruneTol);

/// Row-major square complex matrix.
struct DenseBlock {
  std::size_t dim = 0;
  std::vector<cplx> entries;

  DenseBlock() = default;
  explicit DenseBlock(std::size_t d) : dim(d), entries(d * d, 0.0) {}
  cplx& operator()(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return entries[r * dim + c];
  }
};

/// Pauli expansion sum_P Tr(P m)/2^k P of a 2^k x 2^k matrix (k = 1 or 2).
PauliSum decompose_dense(const DenseBlock& m, double tol = 1e-14);

/// Dense matrix of a sum. Throws CapacityError above kMaxDenseQubits.
DenseBlock to_dense(const PauliSum& s);

std::ostream& operator<<(std::ostream& os, const PauliString& p);

}  // namespace mmvqe
