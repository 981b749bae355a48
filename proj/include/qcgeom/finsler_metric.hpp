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

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>

#include "qcgeom/errors.hpp"
#include "qcgeom/pauli_algebra.hpp"

namespace qcgeom {

/// Penalty metric parameters: directions of Pauli weight >= 3 are stretched
/// by the factor p.
struct MetricConfig {
  int n = 1;
  double p = 1.0;
  int k = 3;

  static MetricConfig make(int n, double p) {
    require_qubits(n);
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw DomainError("penalty factor p must be finite and >= 1, got " +
                        std::to_string(p));
    }
    return MetricConfig{n, p, partition_k(n)};
  }

  /// p = 2^n unless overridden.
  static MetricConfig with_default_penalty(int n) {
    return make(n, static_cast<double>(dim_of(n)));
  }
};

inline double minkowski_norm(const Eigen::VectorXd& y, const MetricConfig& cfg) {
  const PauliBasis& basis = PauliBasis::get(cfg.n);
  if (static_cast<std::size_t>(y.size()) != basis.size()) {
    throw DomainError("coefficient vector length does not match metric dimension");
  }
  auto eval = [&](double scale) {
    double low = 0.0;
    double high = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double v = y[static_cast<Eigen::Index>(i)] * scale;
      if (basis[i].weight() <= 2) low += v * v; else high += v * v;
    }
    return std::sqrt(low + cfg.p * cfg.p * high);
  };
  const double f = eval(1.0);
  if (std::isfinite(f) && f > 1e-150) return f;
  // Squares under- or overflowed; rescale by a power of two (exact).
  const double big = y.cwiseAbs().maxCoeff();
  if (big == 0.0 || !std::isfinite(big)) return f;
  const int e = std::ilogb(big);
  return std::ldexp(eval(std::ldexp(1.0, -e)), e);
}

inline double minkowski_norm(const CoeffVector& y, const MetricConfig& cfg) {
  if (y.n() != cfg.n) throw DomainError("coefficient vector qubit count does not match metric");
  return minkowski_norm(y.values(), cfg);
}

/// F_p of a single basis direction with coefficient `value`.
inline double axis_norm(const PauliString& s, double value, const MetricConfig& cfg) {
  return (s.weight() <= 2 ? 1.0 : cfg.p) * std::abs(value);
}

struct DistortionConstants {
  double m_small;
  double m_big;
};

/// Exact extrema of F_p(y)/|y|.
inline DistortionConstants distortion_constants(const MetricConfig& cfg) {
  const bool has_penalized = tangent_dim(cfg.n) > static_cast<std::size_t>(cfg.k);
  return {1.0, has_penalized ? cfg.p : 1.0};
}

/// A norm on tangent coordinates. Used for property checks and Monte Carlo
/// distortion estimates on norms other than F_p.
using TangentNorm = std::function<double(const Eigen::VectorXd&)>;

inline TangentNorm euclidean_norm_fn() {
  return [](const Eigen::VectorXd& y) { return y.norm(); };
}
inline TangentNorm penalty_norm_fn(const MetricConfig& cfg) {
  return [cfg](const Eigen::VectorXd& y) { return minkowski_norm(y, cfg); };
}
inline TangentNorm one_norm_fn() {
  return [](const Eigen::VectorXd& y) { return y.lpNorm<1>(); };
}
/// sqrt(y^T A y) for symmetric positive definite A.
inline TangentNorm quadratic_norm_fn(Eigen::MatrixXd a) {
  return [a = std::move(a)](const Eigen::VectorXd& y) {
    return std::sqrt(std::max(0.0, y.dot(a * y)));
  };
}

namespace detail {

inline double checked_eval(const TangentNorm& norm, const Eigen::VectorXd& y) {
  const double v = norm(y);
  if (!std::isfinite(v)) throw EvaluationError("norm evaluated to a non-finite value");
  return v;
}

inline double half_square(const TangentNorm& norm, const Eigen::VectorXd& y) {
  const double v = checked_eval(norm, y);
  return 0.5 * v * v;
}

inline double fd_step(const Eigen::VectorXd& y) { return 1e-4 * std::max(1.0, y.norm()); }

}  // namespace detail

/// Central-difference gradient of 1/2 norm^2 with step h.
inline Eigen::VectorXd fd_gradient(const TangentNorm& norm, const Eigen::VectorXd& y,
                                   double h) {
  Eigen::VectorXd g(y.size());
  Eigen::VectorXd probe = y;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    probe[i] = y[i] + h;
    const double fp = detail::half_square(norm, probe);
    probe[i] = y[i] - h;
    const double fm = detail::half_square(norm, probe);
    probe[i] = y[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Central-difference Hessian of 1/2 norm^2 with step h = 1e-4 max(1, |y|).
inline Eigen::MatrixXd fd_hessian(const TangentNorm& norm, const Eigen::VectorXd& y) {
  const double h = detail::fd_step(y);
  const Eigen::Index d = y.size();
  Eigen::MatrixXd hess(d, d);
  Eigen::VectorXd probe = y;
  const double f0 = detail::half_square(norm, y);
  for (Eigen::Index i = 0; i < d; ++i) {
    probe[i] = y[i] + h;
    const double fp = detail::half_square(norm, probe);
    probe[i] = y[i] - h;
    const double fm = detail::half_square(norm, probe);
    probe[i] = y[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      double acc = 0.0;
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          probe[i] = y[i] + si * h;
          probe[j] = y[j] + sj * h;
          acc += si * sj * detail::half_square(norm, probe);
        }
      }
      probe[i] = y[i];
      probe[j] = y[j];
      hess(i, j) = hess(j, i) = acc / (4.0 * h * h);
    }
  }
  return hess;
}

struct FinslerReport {
  bool smoothness_pass = true;
  bool homogeneity_pass = true;
  bool hessian_pd_pass = true;
  double min_hessian_eigenvalue = 0.0;
  double max_homogeneity_error = 0.0;
  double max_gradient_mismatch = 0.0;

  bool all_pass() const { return smoothness_pass && homogeneity_pass && hessian_pd_pass; }
};

/// Numerical checks of the Minkowski-norm axioms at the given trial points:
/// positive homogeneity, a smoothness proxy (gradient stable under step
/// halving) and a positive definite Hessian of 1/2 norm^2.
inline FinslerReport check_finsler_properties(const TangentNorm& norm, int n,
                                              std::span<const Eigen::VectorXd> trial_points) {
  require_qubits(n);
  const auto d = static_cast<Eigen::Index>(tangent_dim(n));
  FinslerReport report;
  report.min_hessian_eigenvalue = std::numeric_limits<double>::infinity();

  for (const Eigen::VectorXd& y : trial_points) {
    if (y.size() != d) throw DomainError("trial point dimension does not match 4^n-1");
    if ((y.array() == 0.0).all()) throw DomainError("trial points must be nonzero");

    const double base = detail::checked_eval(norm, y);
    for (double lambda : {0.5, 2.0, 10.0}) {
      const double err =
          std::abs(detail::checked_eval(norm, (lambda * y).eval()) - lambda * base);
      report.max_homogeneity_error = std::max(report.max_homogeneity_error, err);
      if (!(err < 1e-9)) report.homogeneity_pass = false;
    }

    const double h = detail::fd_step(y);
    const Eigen::VectorXd g_full = fd_gradient(norm, y, h);
    const Eigen::VectorXd g_half = fd_gradient(norm, y, 0.5 * h);
    const double scale = std::max(g_full.norm(), 1e-12);
    const double mismatch = (g_full - g_half).norm() / scale;
    report.max_gradient_mismatch = std::max(report.max_gradient_mismatch, mismatch);
    if (!(mismatch <= 1e-5)) report.smoothness_pass = false;

    const Eigen::MatrixXd hess = fd_hessian(norm, y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    report.min_hessian_eigenvalue = std::min(report.min_hessian_eigenvalue, lo);
    if (!(lo > 1e-6)) report.hessian_pd_pass = false;
  }
  return report;
}

}  // namespace qcgeom
