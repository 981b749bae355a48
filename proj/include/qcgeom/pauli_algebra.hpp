// Copyright 2026 The qcgeom Authors
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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "qcgeom/errors.hpp"

namespace qcgeom {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 6;
inline constexpr double kHermitianTol = 1e-10;

inline void require_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw DomainError("qubit count " + std::to_string(n) +
                      " outside supported range [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
}

inline std::size_t dim_of(int n) { return std::size_t{1} << n; }
inline std::size_t tangent_dim(int n) { return (std::size_t{1} << (2 * n)) - 1; }

/// An n-fold tensor word over {I, X, Y, Z}.
///
/// The canonical index reads the word as base-4 digits with qubit 0 the most
/// significant digit (I=0, X=1, Y=2, Z=3). Qubit 0 is also the leftmost
/// tensor factor, i.e. the most significant bit of a computational basis row.
class PauliString {
 public:
  PauliString(int n, std::uint64_t index) : n_(n), index_(index) {
    require_qubits(n);
    if (index >= (std::uint64_t{1} << (2 * n))) {
      throw DomainError("Pauli index out of range");
    }
    for (int q = 0; q < n; ++q) {
      const int letter = this->letter(q);
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      if (letter == 1 || letter == 2) x_mask_ |= bit;
      if (letter == 2 || letter == 3) z_mask_ |= bit;
      if (letter == 2) ++y_count_;
      if (letter != 0) ++weight_;
    }
  }

  static PauliString parse(std::string_view word) {
    const int n = static_cast<int>(word.size());
    require_qubits(n);
    std::uint64_t index = 0;
    for (char c : word) {
      int d = 0;
      switch (c) {
        case 'I': d = 0; break;
        case 'X': d = 1; break;
        case 'Y': d = 2; break;
        case 'Z': d = 3; break;
        default:
          throw DomainError("invalid Pauli letter '" + std::string(1, c) +
                            "' in word \"" + std::string(word) + "\"");
      }
      index = index * 4 + static_cast<std::uint64_t>(d);
    }
    return PauliString(n, index);
  }

  int n() const { return n_; }
  std::uint64_t index() const { return index_; }
  int weight() const { return weight_; }

  /// Letter code (0..3) on qubit q.
  int letter(int q) const {
    return static_cast<int>((index_ >> (2 * (n_ - 1 - q))) & 3U);
  }

  std::string str() const {
    static constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};
    std::string s(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = kLetters[letter(q)];
    return s;
  }

  // Pauli strings are monomial: column c has its single nonzero entry in row
  // c ^ x_mask, with value i^{#Y} * (-1)^{popcount(c & z_mask)}.
  std::uint64_t row_of(std::uint64_t col) const { return col ^ x_mask_; }
  Complex entry_in_column(std::uint64_t col) const {
    static constexpr std::array<Complex, 4> kIPow{
        Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    const double sign = (std::popcount(col & z_mask_) & 1) ? -1.0 : 1.0;
    return kIPow[static_cast<std::size_t>(y_count_ & 3)] * sign;
  }

  CMatrix matrix() const {
    const auto d = static_cast<Eigen::Index>(dim_of(n_));
    CMatrix m = CMatrix::Zero(d, d);
    for (std::uint64_t c = 0; c < dim_of(n_); ++c) {
      m(static_cast<Eigen::Index>(row_of(c)), static_cast<Eigen::Index>(c)) =
          entry_in_column(c);
    }
    return m;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.index_ == b.index_;
  }

 private:
  int n_;
  std::uint64_t index_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
  int weight_ = 0;
};

/// Number of weight <= 2 strings: 3n single-qubit plus 9 n(n-1)/2 two-qubit.
inline int partition_k(int n) {
  if (n < 1) throw DomainError("partition_k requires n >= 1");
  return 9 * (n * n - n) / 2 + 3 * n;
}

/// Tangent basis on n qubits: every non-identity string, weight-ascending,
/// ties broken by canonical index. Instances are shared and immutable.
class PauliBasis {
 public:
  static const PauliBasis& get(int n) {
    require_qubits(n);
    static std::array<std::once_flag, kMaxQubits + 1> flags;
    static std::array<PauliBasis, kMaxQubits + 1> cache;
    std::call_once(flags[static_cast<std::size_t>(n)],
                   [n] { cache[static_cast<std::size_t>(n)] = PauliBasis(n); });
    return cache[static_cast<std::size_t>(n)];
  }

  PauliBasis() = default;

  int n() const { return n_; }
  std::size_t size() const { return strings_.size(); }
  const PauliString& operator[](std::size_t i) const { return strings_[i]; }
  const std::vector<PauliString>& strings() const { return strings_; }

  /// Position of the canonical index in this basis; identity has none.
  std::size_t position_of(std::uint64_t index) const {
    if (index == 0 || index > strings_.size()) {
      throw DomainError("identity or out-of-range index has no tangent position");
    }
    return position_[index];
  }
  std::size_t position_of(const PauliString& s) const {
    if (s.n() != n_) throw DomainError("Pauli string qubit count mismatch");
    return position_of(s.index());
  }

  /// Count of strings with weight <= 2; they occupy positions [0, k).
  std::size_t low_weight_count() const { return low_weight_; }

 private:
  explicit PauliBasis(int n) : n_(n) {
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    strings_.reserve(total - 1);
    for (std::uint64_t i = 1; i < total; ++i) strings_.emplace_back(n, i);
    std::stable_sort(strings_.begin(), strings_.end(),
                     [](const PauliString& a, const PauliString& b) {
                       return a.weight() < b.weight();
                     });
    position_.assign(total, 0);
    for (std::size_t p = 0; p < strings_.size(); ++p) {
      position_[strings_[p].index()] = p;
      if (strings_[p].weight() <= 2) ++low_weight_;
    }
  }

  int n_ = 0;
  std::vector<PauliString> strings_;
  std::vector<std::size_t> position_;
  std::size_t low_weight_ = 0;
};

inline std::vector<PauliString> enumerate_basis(int n) {
  return PauliBasis::get(n).strings();
}

/// Real coefficients over the non-identity Pauli basis, in PauliBasis order.
class CoeffVector {
 public:
  CoeffVector() = default;
  explicit CoeffVector(int n)
      : n_(n), y_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(
                   (require_qubits(n), tangent_dim(n))))) {}
  CoeffVector(int n, Eigen::VectorXd y) : n_(n), y_(std::move(y)) {
    require_qubits(n);
    if (static_cast<std::size_t>(y_.size()) != tangent_dim(n)) {
      throw DomainError("coefficient vector length " + std::to_string(y_.size()) +
                        " does not match 4^n-1 = " +
                        std::to_string(tangent_dim(n)));
    }
    if (!y_.allFinite()) throw ValidationError("coefficient vector has non-finite entries");
  }

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(y_.size()); }
  const Eigen::VectorXd& values() const { return y_; }
  double operator[](std::size_t i) const { return y_[static_cast<Eigen::Index>(i)]; }
  double& operator[](std::size_t i) { return y_[static_cast<Eigen::Index>(i)]; }

  double at(std::string_view word) const {
    return (*this)[PauliBasis::get(n_).position_of(PauliString::parse(word))];
  }
  void set(std::string_view word, double value) {
    const auto s = PauliString::parse(word);
    if (s.n() != n_) throw DomainError("Pauli word length does not match n");
    (*this)[PauliBasis::get(n_).position_of(s)] = value;
  }

  double euclidean_norm() const { return y_.norm(); }
  bool is_zero() const { return (y_.array() == 0.0).all(); }

  CoeffVector scaled(double s) const { return CoeffVector(n_, y_ * s); }
  friend CoeffVector operator+(const CoeffVector& a, const CoeffVector& b) {
    if (a.n_ != b.n_) throw DomainError("qubit count mismatch");
    return CoeffVector(a.n_, a.y_ + b.y_);
  }
  friend CoeffVector operator-(const CoeffVector& a, const CoeffVector& b) {
    if (a.n_ != b.n_) throw DomainError("qubit count mismatch");
    return CoeffVector(a.n_, a.y_ - b.y_);
  }

 private:
  int n_ = 0;
  Eigen::VectorXd y_;
};

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline int qubits_for_dimension(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (static_cast<Eigen::Index>(dim_of(n)) == dim) return n;
  }
  throw DomainError("matrix dimension " + std::to_string(dim) +
                    " is not 2^n for supported n");
}

/// Coefficients y_i = Re tr(sigma_i H) / 2^n of a traceless Hermitian H.
inline CoeffVector decompose(const CMatrix& h, int n) {
  require_qubits(n);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  if (h.rows() != d || h.cols() != d) {
    throw DomainError("matrix is " + std::to_string(h.rows()) + "x" +
                      std::to_string(h.cols()) + ", expected " +
                      std::to_string(d) + "x" + std::to_string(d));
  }
  const double herm_dev = max_abs(h - h.adjoint());
  if (!(herm_dev <= kHermitianTol)) {
    throw ValidationError("matrix is not Hermitian: max |H - H^dagger| = " +
                          std::to_string(herm_dev));
  }
  const Complex tr = h.trace();
  if (!(std::abs(tr) <= kHermitianTol)) throw IdentityComponentError(tr);

  const PauliBasis& basis = PauliBasis::get(n);
  Eigen::VectorXd y(static_cast<Eigen::Index>(basis.size()));
  const double inv_dim = 1.0 / static_cast<double>(d);
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const PauliString& s = basis[p];
    // tr(sigma H) = sum_c sigma[r(c), c] * H[c, r(c)]
    Complex acc = 0;
    for (std::uint64_t c = 0; c < dim_of(n); ++c) {
      acc += s.entry_in_column(c) *
             h(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(s.row_of(c)));
    }
    y[static_cast<Eigen::Index>(p)] = acc.real() * inv_dim;
  }
  return CoeffVector(n, std::move(y));
}

/// sum_i y_i sigma_i.
inline CMatrix reconstruct(const CoeffVector& y) {
  const int n = y.n();
  require_qubits(n);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  CMatrix h = CMatrix::Zero(d, d);
  const PauliBasis& basis = PauliBasis::get(n);
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const double coeff = y[p];
    if (coeff == 0.0) continue;
    const PauliString& s = basis[p];
    for (std::uint64_t c = 0; c < dim_of(n); ++c) {
      h(static_cast<Eigen::Index>(s.row_of(c)), static_cast<Eigen::Index>(c)) +=
          coeff * s.entry_in_column(c);
    }
  }
  return h;
}

}  // namespace qcgeom
