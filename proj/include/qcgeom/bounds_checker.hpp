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
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <initializer_list>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qcgeom/errors.hpp"
#include "qcgeom/finsler_metric.hpp"
#include "qcgeom/manifold_charts.hpp"
#include "qcgeom/path_geometry.hpp"
#include "qcgeom/random.hpp"
#include "qcgeom/standard_simulation.hpp"

namespace qcgeom {

inline constexpr double kBoundTol = 1e-9;

/// lower <= observed <= upper, checked with absolute slack kBoundTol.
struct BoundReport {
  std::string context;
  double lower = 0.0;
  double observed = 0.0;
  double upper = 0.0;
  bool passed = false;
  std::pair<double, double> slack{0.0, 0.0};

  static BoundReport make(std::string context, double lower, double observed, double upper) {
    BoundReport r{std::move(context), lower, observed, upper, false,
                  {observed - lower, upper - observed}};
    r.passed = lower - kBoundTol <= observed && observed <= upper + kBoundTol;
    return r;
  }
};

struct DistortionEstimate {
  double m_small = 0.0;
  double m_big = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kSamplerChunk = 4096;

/// Monte Carlo min and max of norm(y)/|y| over random unit directions.
///
/// Each draw picks a support size s uniformly in [1, d], a uniformly random
/// coordinate subset of that size, and an isotropic Gaussian on it. The
/// measure has full support on the sphere but also puts mass on sparse
/// directions. The i-th draw depends only on (seed, i / kSamplerChunk), so a
/// larger sample is a superset of a smaller one and the estimated range can
/// only widen.
inline DistortionEstimate estimate_distortion(const TangentNorm& norm, int n,
                                              std::size_t samples, std::uint64_t seed) {
  require_qubits(n);
  if (samples < 1) throw DomainError("need at least one sample");
  const auto d = static_cast<Eigen::Index>(tangent_dim(n));
  DistortionEstimate est{std::numeric_limits<double>::infinity(), 0.0, samples};

  std::vector<Eigen::Index> coords(static_cast<std::size_t>(d));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> support(1, d);
  Eigen::VectorXd y(d);

  for (std::size_t chunk = 0; chunk * kSamplerChunk < samples; ++chunk) {
    auto rng = make_rng(seed, Stream::kSampler, chunk);
    const std::size_t end = std::min(samples, (chunk + 1) * kSamplerChunk);
    for (std::size_t i = chunk * kSamplerChunk; i < end; ++i) {
      const Eigen::Index s = support(rng);
      for (Eigen::Index c = 0; c < d; ++c) coords[static_cast<std::size_t>(c)] = c;
      // Partial Fisher-Yates: the first s entries are a uniform subset.
      for (Eigen::Index c = 0; c < s; ++c) {
        std::uniform_int_distribution<Eigen::Index> pick(c, d - 1);
        std::swap(coords[static_cast<std::size_t>(c)],
                  coords[static_cast<std::size_t>(pick(rng))]);
      }
      y.setZero();
      for (Eigen::Index c = 0; c < s; ++c) y[coords[static_cast<std::size_t>(c)]] = normal(rng);
      const double len = y.norm();
      if (len == 0.0) continue;
      y /= len;
      const double v = norm(y);
      if (!std::isfinite(v)) throw EvaluationError("norm evaluated to a non-finite value");
      est.m_small = std::min(est.m_small, v);
      est.m_big = std::max(est.m_big, v);
    }
  }
  return est;
}

/// Chart sandwich |phi(x1)| <= L <= p |phi(x1)| for the straight chart
/// segment from x0 to x1, whose F_p length upper-bounds d_F(x0, x1).
inline BoundReport check_segment_distortion(const Unitary& x0, const Unitary& x1,
                                            const MetricConfig& cfg) {
  const CoeffVector y = log_coords(x1, x0);
  const double rho = y.euclidean_norm();
  Path straight(cfg.n);
  if (!y.is_zero()) straight.append({y, 1.0});
  return BoundReport::make("segment_distortion", rho, path_length(straight, cfg), cfg.p * rho);
}

struct CountBounds {
  double lower;
  double upper;
};

namespace detail {
inline void require_positive(std::initializer_list<double> values, const char* what) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(what) + " requires positive finite inputs");
    }
  }
}
}  // namespace detail

/// d / (rho_sup M) <= m <= d / (rho_inf m).
inline CountBounds theorem1_bounds(double d, double rho_inf, double rho_sup, double m_small,
                                   double m_big) {
  detail::require_positive({d, rho_inf, rho_sup, m_small, m_big}, "theorem1_bounds");
  return {d / (rho_sup * m_big), d / (rho_inf * m_small)};
}

/// d / beta_sup <= m <= (M / m) d / beta_inf.
inline CountBounds theorem2_bounds(double d, double beta_inf, double beta_sup, double m_small,
                                   double m_big) {
  detail::require_positive({d, beta_inf, beta_sup, m_small, m_big}, "theorem2_bounds");
  return {d / beta_sup, (m_big / m_small) * d / beta_inf};
}

/// Summed per-segment sandwich m * m_small * rho_inf <= L <= m * M * rho_sup.
inline BoundReport check_decomposition(std::size_t m, double rho_inf, double rho_sup,
                                       double length, double m_small, double m_big) {
  const double md = static_cast<double>(m);
  return BoundReport::make("decomposition_length", md * m_small * rho_inf, length,
                           md * m_big * rho_sup);
}

/// m rho_inf <= L(I, U~) <= m p rho_sup for a simulation result.
inline BoundReport check_sim_sandwich(const SimulationResult& result, const MetricConfig& cfg) {
  const double m = static_cast<double>(result.gate_count);
  return BoundReport::make("sim_sandwich", m * result.rho_inf, result.exact_path_length,
                           m * cfg.p * result.rho_sup);
}

/// Chart lower bound of U~ <= exactly-synthesized path length.
inline BoundReport check_length_dominance(const SimulationResult& result) {
  const double lower = result.endpoint_lower.value_or(0.0);
  return BoundReport::make("length_dominance", lower, result.exact_path_length,
                           std::numeric_limits<double>::infinity());
}

struct ScalingPoint {
  double delta;
  std::size_t gate_count;
  double approx_error;
  double exact_path_length;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  std::vector<BoundReport> sandwich_reports;
};

/// Least-squares slope of log(values) against log(xs).
inline std::pair<double, double> loglog_fit(std::span<const double> xs,
                                            std::span<const double> values,
                                            double* rms = nullptr) {
  if (xs.size() != values.size() || xs.size() < 2) {
    throw DomainError("log-log fit needs at least two matched points");
  }
  const auto k = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd a(k, 2);
  Eigen::VectorXd b(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (!(xs[u] > 0.0) || !(values[u] > 0.0)) throw DomainError("log-log fit needs positive data");
    a(i, 0) = std::log(xs[u]);
    a(i, 1) = 1.0;
    b[i] = std::log(values[u]);
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  if (rms) *rms = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(k));
  return {coef[0], coef[1]};
}

/// Gate-count growth of the standard simulation as Delta shrinks.
inline ScalingReport corollary2_scaling(const Schedule& schedule, const MetricConfig& cfg,
                                        std::span<const double> deltas) {
  if (deltas.size() < 3) throw DomainError("scaling study needs at least three slice widths");
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  if (!(*lo > 0.0) || *hi / *lo < 4.0 - 1e-12) {
    throw DomainError("slice widths must span at least a factor of 4");
  }
  ScalingReport rep;
  std::vector<double> inv_delta;
  std::vector<double> counts;
  for (double delta : deltas) {
    const SimulationResult r = simulate(schedule, cfg, delta);
    rep.points.push_back({delta, r.gate_count, r.approx_error, r.exact_path_length});
    rep.sandwich_reports.push_back(check_sim_sandwich(r, cfg));
    inv_delta.push_back(1.0 / delta);
    counts.push_back(static_cast<double>(r.gate_count));
  }
  std::tie(rep.slope, rep.intercept) = loglog_fit(inv_delta, counts, &rep.residual);
  return rep;
}

}  // namespace qcgeom
