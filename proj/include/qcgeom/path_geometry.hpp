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
#include <optional>
#include <random>
#include <vector>

#include "qcgeom/errors.hpp"
#include "qcgeom/finsler_metric.hpp"
#include "qcgeom/manifold_charts.hpp"
#include "qcgeom/pauli_algebra.hpp"
#include "qcgeom/random.hpp"

namespace qcgeom {

/// Constant Hamiltonian y.sigma applied for duration tau.
struct PathSegment {
  CoeffVector y;
  double tau = 1.0;
};

/// Piecewise-constant control schedule on SU(2^n).
class Path {
 public:
  explicit Path(int n) : n_(n) { require_qubits(n); }
  Path(int n, std::vector<PathSegment> segments) : n_(n) {
    require_qubits(n);
    for (auto& s : segments) append(std::move(s));
  }

  int n() const { return n_; }
  const std::vector<PathSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  void append(PathSegment s) {
    if (s.y.n() != n_) throw DomainError("path segment qubit count does not match path");
    if (!(s.tau > 0.0) || !std::isfinite(s.tau)) {
      throw DomainError("path segment duration must be positive and finite");
    }
    segments_.push_back(std::move(s));
  }

  /// This path followed by `next`.
  Path then(const Path& next) const {
    if (next.n_ != n_) throw DomainError("cannot concatenate paths on different qubit counts");
    Path out = *this;
    for (const auto& s : next.segments_) out.segments_.push_back(s);
    return out;
  }

 private:
  int n_;
  std::vector<PathSegment> segments_;
};

/// Time-ordered product; later segments multiply on the left.
inline Unitary path_endpoint(const Path& path) {
  const auto d = static_cast<Eigen::Index>(dim_of(path.n()));
  CMatrix acc = CMatrix::Identity(d, d);
  for (const auto& s : path.segments()) {
    if (s.y.is_zero()) continue;
    acc = (expm_hermitian(reconstruct(s.y), s.tau) * acc).eval();
  }
  return Unitary(path.n(), std::move(acc));
}

/// Integral length sum_j F_p(y_j) tau_j.
inline double path_length(const Path& path, const MetricConfig& cfg) {
  if (path.n() != cfg.n) throw DomainError("path and metric qubit counts differ");
  double total = 0.0;
  for (const auto& s : path.segments()) total += minkowski_norm(s.y, cfg) * s.tau;
  return total;
}

struct OptimizerSettings {
  int segments = 8;
  int restarts = 16;
  double endpoint_tolerance = 1e-6;
  std::uint64_t seed = 0;
  int max_evaluations = 4000;  // per restart
  double initial_step = 0.05;
};

struct OptimizerStats {
  int restarts = 0;
  long iterations = 0;
  double endpoint_error = 0.0;
};

struct DistanceEstimate {
  double upper = 0.0;
  double lower = 0.0;
  Path witness_path{1};
  OptimizerStats optimizer_stats;
};

/// Chart lower bound m |log_coords(U, I)|, with m = 1 for F_p.
inline double distance_lower(const Unitary& u, const MetricConfig& cfg) {
  if (u.n() != cfg.n) throw DomainError("unitary and metric qubit counts differ");
  return distortion_constants(cfg).m_small *
         log_coords(u, Unitary::identity(u.n())).euclidean_norm();
}

namespace detail {

// Penalty-augmented coordinate pattern search over per-segment displacement
// vectors v_j (unit durations, so F_p(v_j) is the segment length). Moves are
// evaluated against cached prefix/suffix products so each trial costs one
// exponential.
class PatternSearch {
 public:
  PatternSearch(const Unitary& target, const MetricConfig& cfg, const OptimizerSettings& opt)
      : target_(target.matrix()), cfg_(cfg), opt_(opt),
        dim_(static_cast<Eigen::Index>(dim_of(cfg.n))) {}

  struct Outcome {
    std::vector<Eigen::VectorXd> v;
    long sweeps = 0;
  };

  Outcome run(std::vector<Eigen::VectorXd> v) {
    const std::size_t segs = v.size();
    std::vector<CMatrix> seg_exp(segs);
    std::vector<double> seg_len(segs);
    for (std::size_t j = 0; j < segs; ++j) {
      seg_exp[j] = segment_exp(v[j]);
      seg_len[j] = minkowski_norm(v[j], cfg_);
    }

    double mu = 10.0;
    double step = opt_.initial_step;
    long evals = 0;
    long sweeps = 0;
    while (step > 1e-9 && evals < opt_.max_evaluations) {
      bool improved = false;
      for (std::size_t j = 0; j < segs && evals < opt_.max_evaluations; ++j) {
        CMatrix right = CMatrix::Identity(dim_, dim_);
        for (std::size_t i = 0; i < j; ++i) right = (seg_exp[i] * right).eval();
        CMatrix left = CMatrix::Identity(dim_, dim_);
        for (std::size_t i = segs; i-- > j + 1;) left = (left * seg_exp[i]).eval();
        double other_len = 0.0;
        for (std::size_t i = 0; i < segs; ++i) if (i != j) other_len += seg_len[i];

        auto objective = [&](const CMatrix& e, double len) {
          const double err = (left * e * right - target_).norm();
          return other_len + len + mu * err * err;
        };
        double best = objective(seg_exp[j], seg_len[j]);
        for (Eigen::Index c = 0; c < v[j].size() && evals < opt_.max_evaluations; ++c) {
          for (double dir : {1.0, -1.0}) {
            Eigen::VectorXd trial = v[j];
            trial[c] += dir * step;
            const CMatrix e = segment_exp(trial);
            const double len = minkowski_norm(trial, cfg_);
            const double f = objective(e, len);
            ++evals;
            if (f < best) {
              best = f;
              v[j] = std::move(trial);
              seg_exp[j] = e;
              seg_len[j] = len;
              improved = true;
              break;
            }
          }
        }
      }
      ++sweeps;
      if (!improved) step *= 0.5;
      if (endpoint_error(seg_exp) > opt_.endpoint_tolerance) mu = std::min(mu * 10.0, 1e12);
    }
    return {std::move(v), sweeps};
  }

 private:
  CMatrix segment_exp(const Eigen::VectorXd& v) const {
    if ((v.array() == 0.0).all()) return CMatrix::Identity(dim_, dim_);
    return expm_hermitian(reconstruct(CoeffVector(cfg_.n, v)));
  }
  double endpoint_error(const std::vector<CMatrix>& seg_exp) const {
    CMatrix acc = CMatrix::Identity(dim_, dim_);
    for (const auto& e : seg_exp) acc = (e * acc).eval();
    return (acc - target_).norm();
  }

  CMatrix target_;
  MetricConfig cfg_;
  OptimizerSettings opt_;
  Eigen::Index dim_;
};

// Plain Frobenius distance. Aligning a global phase here would let the
// optimizer land on a different centre element e^{2 pi i k / 2^n} U.
inline double endpoint_error(const Path& p, const Unitary& u) {
  return (path_endpoint(p).matrix() - u.matrix()).norm();
}

inline Path displacements_to_path(int n, const std::vector<Eigen::VectorXd>& v) {
  Path p(n);
  for (const auto& vj : v) {
    if ((vj.array() == 0.0).all()) continue;
    p.append({CoeffVector(n, vj), 1.0});
  }
  return p;
}

}  // namespace detail

/// Upper bound on d_F(I, U) from the shortest feasible S-segment schedule
/// found over seeded restarts. The one-parameter subgroup through
/// log_coords(U, I) seeds restart 0 whenever the principal chart admits U.
inline DistanceEstimate distance_upper(const Unitary& u, const MetricConfig& cfg,
                                       const OptimizerSettings& opt = {}) {
  const int n = u.n();
  if (n != cfg.n) throw DomainError("unitary and metric qubit counts differ");
  if (opt.segments < 1 || opt.restarts < 0 || !(opt.endpoint_tolerance > 0.0) ||
      opt.max_evaluations < 0) {
    throw DomainError("invalid optimizer settings");
  }
  const Unitary identity = Unitary::identity(n);
  const auto tdim = static_cast<Eigen::Index>(tangent_dim(n));

  std::optional<double> lower;
  std::optional<CoeffVector> principal;
  try {
    principal = log_coords(u, identity);
    lower = distortion_constants(cfg).m_small * principal->euclidean_norm();
  } catch (const BranchCutError&) {
  } catch (const ValidationError&) {
  }

  DistanceEstimate best;
  best.witness_path = Path(n);
  if (max_abs(u.matrix() - identity.matrix()) <= 1e-12) {
    best.optimizer_stats = {0, 0, (u.matrix() - identity.matrix()).norm()};
    return best;
  }

  double best_len = std::numeric_limits<double>::infinity();
  double best_err = std::numeric_limits<double>::infinity();
  double best_infeasible_err = std::numeric_limits<double>::infinity();
  std::optional<Path> best_path;
  long total_sweeps = 0;
  int runs = 0;

  detail::PatternSearch search(u, cfg, opt);
  const int total_runs = opt.restarts + (principal ? 1 : 0);
  for (int r = 0; r < total_runs; ++r) {
    std::vector<Eigen::VectorXd> v(static_cast<std::size_t>(opt.segments),
                                   Eigen::VectorXd::Zero(tdim));
    const bool subgroup_start = principal && r == 0;
    if (subgroup_start) {
      for (auto& vj : v) vj = principal->values() / opt.segments;
    } else {
      auto rng = make_rng(opt.seed, Stream::kOptimizer, static_cast<std::uint64_t>(r));
      const double sigma = 0.5 / std::sqrt(static_cast<double>(tdim));
      for (auto& vj : v) {
        vj = sigma * gaussian_vector(rng, tdim);
        if (principal) vj += principal->values() / opt.segments;
      }
    }

    auto outcome = search.run(std::move(v));
    total_sweeps += outcome.sweeps;
    ++runs;

    // Close the schedule exactly: replace the last displacement by the chart
    // coordinates of U around the preceding partial product.
    Path candidate = detail::displacements_to_path(n, outcome.v);
    {
      std::vector<Eigen::VectorXd> head(outcome.v.begin(), outcome.v.end() - 1);
      const Path prefix = detail::displacements_to_path(n, head);
      try {
        const CoeffVector closing = log_coords(u, path_endpoint(prefix));
        Path closed = prefix;
        if (!closing.is_zero()) closed.append({closing, 1.0});
        // A closed schedule reaches U to rounding, so its length is a true
        // upper bound; an open one within tolerance may undercut d_F slightly.
        if (detail::endpoint_error(closed, u) <= opt.endpoint_tolerance) {
          candidate = std::move(closed);
        }
      } catch (const BranchCutError&) {
      } catch (const ValidationError&) {
      }
    }

    const double err = detail::endpoint_error(candidate, u);
    if (err > opt.endpoint_tolerance) {
      best_infeasible_err = std::min(best_infeasible_err, err);
      continue;
    }
    const double len = path_length(candidate, cfg);
    if (len < best_len) {
      best_len = len;
      best_err = err;
      best_path = std::move(candidate);
    }
  }

  if (!best_path) throw InfeasibleError(best_infeasible_err);
  best.upper = best_len;
  best.lower = lower.value_or(0.0);
  best.witness_path = std::move(*best_path);
  best.optimizer_stats = {runs, total_sweeps, best_err};
  return best;
}

}  // namespace qcgeom
