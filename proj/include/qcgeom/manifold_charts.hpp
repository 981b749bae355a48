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
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qcgeom/errors.hpp"
#include "qcgeom/pauli_algebra.hpp"

namespace qcgeom {

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kDeterminantTol = 1e-8;
inline constexpr double kBranchGap = 1e-8;
inline constexpr double kLogReconstructTol = 1e-9;

/// Element of SU(2^n). Construction validates unitarity and unit determinant.
class Unitary {
 public:
  Unitary() = default;
  Unitary(int n, CMatrix m) : n_(n), m_(std::move(m)) {
    require_qubits(n);
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    if (m_.rows() != d || m_.cols() != d) {
      throw DomainError("unitary matrix dimension does not match 2^n");
    }
    if (!m_.allFinite()) throw ValidationError("unitary has non-finite entries");
    const double dev = max_abs(m_ * m_.adjoint() - CMatrix::Identity(d, d));
    if (!(dev <= kUnitaryTol)) {
      throw ValidationError("matrix is not unitary: max |U U^dagger - I| = " +
                            std::to_string(dev));
    }
    const Complex det = m_.determinant();
    if (!(std::abs(det - Complex(1.0, 0.0)) <= kDeterminantTol)) {
      throw ValidationError("matrix is not special unitary: det = (" +
                            std::to_string(det.real()) + ", " +
                            std::to_string(det.imag()) + ")");
    }
  }

  static Unitary identity(int n) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    return Unitary(n, CMatrix::Identity(d, d));
  }

  int n() const { return n_; }
  const CMatrix& matrix() const { return m_; }

  Unitary operator*(const Unitary& rhs) const {
    if (n_ != rhs.n_) throw DomainError("qubit count mismatch in product");
    return Unitary(n_, m_ * rhs.m_);
  }
  Unitary adjoint() const { return Unitary(n_, m_.adjoint()); }

 private:
  int n_ = 0;
  CMatrix m_;
};

/// exp(-i t H) for Hermitian H through its spectral decomposition.
inline CMatrix expm_hermitian(const CMatrix& h, double t = 1.0) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(-i y.sigma) * base.
inline Unitary exp_coords(const CoeffVector& y, const Unitary& base) {
  if (y.n() != base.n()) throw DomainError("coordinate and base qubit counts differ");
  if (y.is_zero()) return base;
  return Unitary(base.n(), expm_hermitian(reconstruct(y)) * base.matrix());
}

/// Chart coordinates of x around base: the principal logarithm of x base^dagger
/// expressed in the Pauli basis, so that exp_coords(log_coords(x, b), b) == x.
inline CoeffVector log_coords(const Unitary& x, const Unitary& base) {
  if (x.n() != base.n()) throw DomainError("unitary qubit counts differ");
  const int n = x.n();
  const CMatrix w = x.matrix() * base.matrix().adjoint();

  // w is normal, so its Schur form is diagonal and the Schur basis unitary.
  Eigen::ComplexSchur<CMatrix> schur(w);
  const CMatrix& q = schur.matrixU();
  const Eigen::VectorXcd lambda = schur.matrixT().diagonal();

  Eigen::Index closest = 0;
  double gap = std::abs(lambda[0] + 1.0);
  for (Eigen::Index j = 1; j < lambda.size(); ++j) {
    const double g = std::abs(lambda[j] + 1.0);
    if (g < gap) { gap = g; closest = j; }
  }
  if (gap < kBranchGap) throw BranchCutError(lambda[closest]);

  // w = exp(-i H)  =>  eigenvalues of H are -arg(lambda).
  Eigen::VectorXd energies(lambda.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) energies[j] = -std::arg(lambda[j]);
  double shift = energies.mean();
  shift = std::remainder(shift, 2.0 * std::numbers::pi);
  energies.array() -= shift;

  CMatrix h = q * energies.cast<Complex>().asDiagonal() * q.adjoint();
  h = (0.5 * (h + h.adjoint())).eval();
  h.diagonal().array() -= h.trace() / static_cast<double>(h.rows());

  const double residual = max_abs(expm_hermitian(h) - w);
  if (!(residual <= kLogReconstructTol)) {
    throw ValidationError(
        "principal logarithm is not traceless (global phase branch); "
        "reconstruction residual " + std::to_string(residual));
  }
  return decompose(h, n);
}

/// Euclidean chart length |phi(x_next)| in the chart centred at x_s.
inline double chart_segment_rho(const Unitary& x_s, const Unitary& x_next) {
  return log_coords(x_next, x_s).euclidean_norm();
}

/// min over phi of ||a - e^{i phi} b||_F.
inline double phase_aligned_distance(const CMatrix& a, const CMatrix& b) {
  const double overlap = std::abs((b.adjoint() * a).trace());
  const double sq = a.squaredNorm() + b.squaredNorm() - 2.0 * overlap;
  return std::sqrt(std::max(0.0, sq));
}

}  // namespace qcgeom
