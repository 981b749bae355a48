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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcgeom/errors.hpp"
#include "qcgeom/finsler_metric.hpp"
#include "qcgeom/manifold_charts.hpp"
#include "qcgeom/path_geometry.hpp"
#include "qcgeom/pauli_algebra.hpp"

namespace qcgeom {

enum class Interpolation { kPiecewiseConstant, kPiecewiseLinear };

struct ScheduleSample {
  double t = 0.0;
  CoeffVector y;
};

/// Time-dependent Hamiltonian H(t) on [0, T] given by samples. Piecewise-
/// constant mode holds each sample until the next one; linear mode
/// interpolates between samples. Outside the sampled range the nearest
/// sample is held.
class Schedule {
 public:
  Schedule(int n, std::vector<ScheduleSample> samples, double total_time,
           Interpolation mode = Interpolation::kPiecewiseConstant)
      : n_(n), samples_(std::move(samples)), total_(total_time), mode_(mode) {
    require_qubits(n);
    if (samples_.empty()) throw DomainError("schedule needs at least one sample");
    if (!(total_ > 0.0) || !std::isfinite(total_)) {
      throw DomainError("schedule total time must be positive and finite");
    }
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      const auto& s = samples_[j];
      if (s.y.n() != n) throw DomainError("schedule sample qubit count mismatch");
      if (!(s.t >= 0.0 && s.t <= total_)) {
        throw DomainError("schedule sample time outside [0, T]");
      }
      if (j > 0 && !(s.t > samples_[j - 1].t)) {
        throw DomainError("schedule sample times must be strictly increasing");
      }
    }
  }

  /// Piecewise-constant schedule from consecutive (y, tau) segments.
  static Schedule from_path(const Path& path) {
    if (path.empty()) throw DomainError("cannot build a schedule from an empty path");
    std::vector<ScheduleSample> samples;
    double t = 0.0;
    for (const auto& seg : path.segments()) {
      samples.push_back({t, seg.y});
      t += seg.tau;
    }
    return Schedule(path.n(), std::move(samples), t, Interpolation::kPiecewiseConstant);
  }

  static Schedule constant(const CoeffVector& y, double total_time) {
    return Schedule(y.n(), {{0.0, y}}, total_time);
  }

  int n() const { return n_; }
  double total_time() const { return total_; }
  Interpolation mode() const { return mode_; }
  const std::vector<ScheduleSample>& samples() const { return samples_; }

  Eigen::VectorXd value(double t) const {
    if (t <= samples_.front().t) return samples_.front().y.values();
    if (t >= samples_.back().t) return samples_.back().y.values();
    const auto it = std::upper_bound(
        samples_.begin(), samples_.end(), t,
        [](double tv, const ScheduleSample& s) { return tv < s.t; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (mode_ == Interpolation::kPiecewiseConstant) return lo.y.values();
    const double w = (t - lo.t) / (hi.t - lo.t);
    return (1.0 - w) * lo.y.values() + w * hi.y.values();
  }

  /// Exact integral of y(t) over [a, b] for the interpolation class.
  Eigen::VectorXd integral(double a, double b) const {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(samples_.front().y.values().size());
    for (const auto& [u, v] : pieces(a, b)) {
      if (mode_ == Interpolation::kPiecewiseConstant) {
        acc += (v - u) * value(0.5 * (u + v));
      } else {
        acc += (v - u) * 0.5 * (value(u) + value(v));
      }
    }
    return acc;
  }

  /// [a, b] cut at every sample time strictly inside it.
  std::vector<std::pair<double, double>> pieces(double a, double b) const {
    std::vector<std::pair<double, double>> out;
    double u = a;
    for (const auto& s : samples_) {
      if (s.t > u && s.t < b) {
        out.emplace_back(u, s.t);
        u = s.t;
      }
    }
    if (b > u) out.emplace_back(u, b);
    return out;
  }

 private:
  int n_;
  std::vector<ScheduleSample> samples_;
  double total_;
  Interpolation mode_;
};

/// Reference endpoint of the full (unprojected) schedule. Piecewise-constant
/// schedules are exact; linear pieces use `linear_steps` midpoint exponentials
/// per piece.
inline Unitary schedule_endpoint(const Schedule& schedule, int linear_steps = 512) {
  const auto d = static_cast<Eigen::Index>(dim_of(schedule.n()));
  CMatrix acc = CMatrix::Identity(d, d);
  for (const auto& [u, v] : schedule.pieces(0.0, schedule.total_time())) {
    const int steps = schedule.mode() == Interpolation::kPiecewiseConstant ? 1 : linear_steps;
    const double h = (v - u) / steps;
    for (int i = 0; i < steps; ++i) {
      const double mid = u + (i + 0.5) * h;
      const CoeffVector y(schedule.n(), schedule.value(mid));
      if (y.is_zero()) continue;
      acc = (expm_hermitian(reconstruct(y), h) * acc).eval();
    }
  }
  return Unitary(schedule.n(), std::move(acc));
}

/// Drops every coefficient of Pauli weight >= 3.
inline CoeffVector project_hamiltonian(const CoeffVector& y, const MetricConfig& cfg) {
  if (y.n() != cfg.n) throw DomainError("coefficient vector and metric qubit counts differ");
  const PauliBasis& basis = PauliBasis::get(y.n());
  CoeffVector out = y;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].weight() >= 3) out[i] = 0.0;
  }
  return out;
}

inline std::size_t slice_count(double total_time, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("slice width must be positive");
  if (delta > total_time * (1.0 + 1e-12)) {
    throw DomainError("slice width exceeds schedule duration");
  }
  return static_cast<std::size_t>(std::max(1.0, std::ceil(total_time / delta - 1e-9)));
}

/// Widths of the Delta-slices of [0, T]; the final slice is truncated at T.
inline std::vector<double> slice_widths(double total_time, double delta) {
  const std::size_t count = slice_count(total_time, delta);
  std::vector<double> widths(count, delta);
  widths.back() = total_time - delta * static_cast<double>(count - 1);
  return widths;
}

/// Mean Hamiltonian (1/w) int y(t) dt over each slice of width w.
inline std::vector<CoeffVector> slice_mean(const Schedule& schedule, double delta) {
  const auto widths = slice_widths(schedule.total_time(), delta);
  std::vector<CoeffVector> means;
  means.reserve(widths.size());
  double start = 0.0;
  for (double w : widths) {
    means.emplace_back(schedule.n(), schedule.integral(start, start + w) / w);
    start += w;
  }
  return means;
}

struct Gate {
  PauliString pauli;
  double angle = 0.0;  // gate is exp(-i angle pauli)
};

struct GateSequence {
  int n = 1;
  std::vector<Gate> gates;
  double delta = 0.0;
  double substep = 0.0;  // nominal gate duration Delta^2
};

enum class TrotterOrder { kFirst, kSymmetric };

inline std::size_t substeps_per_slice(double delta) {
  return static_cast<std::size_t>(std::max(1.0, std::ceil(1.0 / delta - 1e-9)));
}

/// Product-formula synthesis of each slice into weight <= 2 Pauli rotations.
/// A slice of width w becomes ceil(1/Delta) substeps of duration
/// w / ceil(1/Delta) (= Delta^2 for full slices when 1/Delta is integral);
/// every substep applies one rotation per nonzero coefficient in basis order.
inline GateSequence synthesize_gates(std::span<const CoeffVector> means, double delta,
                                     const MetricConfig& cfg,
                                     std::span<const double> widths = {},
                                     TrotterOrder order = TrotterOrder::kFirst) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("slice width must be positive");
  if (!widths.empty() && widths.size() != means.size()) {
    throw DomainError("slice widths do not match slice means");
  }
  const PauliBasis& basis = PauliBasis::get(cfg.n);
  const std::size_t substeps = substeps_per_slice(delta);

  GateSequence seq;
  seq.n = cfg.n;
  seq.delta = delta;
  seq.substep = delta * delta;

  for (std::size_t s = 0; s < means.size(); ++s) {
    const CoeffVector& mean = means[s];
    if (mean.n() != cfg.n) throw DomainError("slice mean qubit count mismatch");
    std::vector<std::size_t> terms;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double c = mean[i];
      if (c == 0.0) continue;
      if (basis[i].weight() > 2) {
        throw ContractError("slice mean has support on weight-" +
                            std::to_string(basis[i].weight()) + " string " +
                            basis[i].str() + "; project before synthesis");
      }
      if (std::abs(c) > 1.0 + 1e-12) {
        throw CoefficientBoundError("coefficient bound violated: |y| = " +
                                    std::to_string(std::abs(c)) + " on " +
                                    basis[i].str() + " in slice " + std::to_string(s));
      }
      terms.push_back(i);
    }
    const double width = widths.empty() ? delta : widths[s];
    const double dt = width / static_cast<double>(substeps);
    for (std::size_t k = 0; k < substeps; ++k) {
      if (order == TrotterOrder::kFirst) {
        for (std::size_t i : terms) seq.gates.push_back({basis[i], mean[i] * dt});
      } else {
        for (std::size_t i : terms) seq.gates.push_back({basis[i], 0.5 * mean[i] * dt});
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
          seq.gates.push_back({basis[*it], 0.5 * mean[*it] * dt});
        }
      }
    }
  }
  return seq;
}

/// exp(-i angle sigma) acc, using sigma^2 = I.
inline void apply_gate(const Gate& g, CMatrix& acc) {
  const double c = std::cos(g.angle);
  const Complex ms(0.0, -std::sin(g.angle));
  CMatrix rotated(acc.rows(), acc.cols());
  for (std::uint64_t col = 0; col < dim_of(g.pauli.n()); ++col) {
    rotated.row(static_cast<Eigen::Index>(g.pauli.row_of(col))) =
        g.pauli.entry_in_column(col) * acc.row(static_cast<Eigen::Index>(col));
  }
  acc = c * acc + ms * rotated;
}

inline CMatrix gate_product(const GateSequence& seq) {
  const auto d = static_cast<Eigen::Index>(dim_of(seq.n));
  CMatrix acc = CMatrix::Identity(d, d);
  for (const auto& g : seq.gates) apply_gate(g, acc);
  return acc;
}

struct SimulationResult {
  GateSequence gate_sequence;
  Unitary approx;
  Unitary target;
  std::size_t gate_count = 0;
  double exact_path_length = 0.0;
  double approx_error = 0.0;
  double rho_inf = 0.0;
  double rho_sup = 0.0;
  double delta = 0.0;
  std::optional<double> endpoint_lower;  // chart lower bound of approx, if defined
};

struct AutoDelta {
  double c = 1.0;
  OptimizerSettings optimizer{};
};

using DeltaChoice = std::variant<double, AutoDelta>;

/// Global-phase-aligned Frobenius distance normalised by 2^{n/2}.
inline double normalized_phase_distance(const CMatrix& a, const CMatrix& b) {
  return phase_aligned_distance(a, b) / std::sqrt(static_cast<double>(a.rows()));
}

/// Projection, Delta-slicing and gate synthesis of a schedule.
inline SimulationResult simulate(const Schedule& schedule, const MetricConfig& cfg,
                                 const DeltaChoice& delta_choice,
                                 TrotterOrder order = TrotterOrder::kFirst) {
  if (schedule.n() != cfg.n) throw DomainError("schedule and metric qubit counts differ");
  const Unitary target = schedule_endpoint(schedule);

  double delta = 0.0;
  if (const double* fixed = std::get_if<double>(&delta_choice)) {
    delta = *fixed;
  } else {
    const auto& autod = std::get<AutoDelta>(delta_choice);
    const double d_hat = distance_upper(target, cfg, autod.optimizer).upper;
    const double n2 = static_cast<double>(cfg.n * cfg.n);
    delta = d_hat > 0.0 ? std::min(autod.c / (n2 * d_hat), schedule.total_time())
                        : schedule.total_time();
  }

  const auto widths = slice_widths(schedule.total_time(), delta);
  std::vector<CoeffVector> means = slice_mean(schedule, delta);
  for (auto& m : means) m = project_hamiltonian(m, cfg);

  SimulationResult r;
  r.gate_sequence = synthesize_gates(means, delta, cfg, widths, order);
  r.delta = delta;
  r.target = target;
  r.approx = Unitary(cfg.n, gate_product(r.gate_sequence));
  r.gate_count = r.gate_sequence.gates.size();
  r.approx_error = normalized_phase_distance(r.approx.matrix(), target.matrix());

  if (r.gate_count > 0) {
    r.rho_inf = std::numeric_limits<double>::infinity();
    for (const auto& g : r.gate_sequence.gates) {
      r.exact_path_length += axis_norm(g.pauli, g.angle, cfg);
      const double rho = std::abs(g.angle);
      r.rho_inf = std::min(r.rho_inf, rho);
      r.rho_sup = std::max(r.rho_sup, rho);
    }
  }
  try {
    r.endpoint_lower = distance_lower(r.approx, cfg);
  } catch (const BranchCutError&) {
  } catch (const ValidationError&) {
  }
  return r;
}

}  // namespace qcgeom
