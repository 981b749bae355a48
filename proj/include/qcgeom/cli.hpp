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

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qcgeom/bounds_checker.hpp"
#include "qcgeom/errors.hpp"
#include "qcgeom/finsler_metric.hpp"
#include "qcgeom/io.hpp"
#include "qcgeom/manifold_charts.hpp"
#include "qcgeom/path_geometry.hpp"
#include "qcgeom/standard_simulation.hpp"

namespace qcgeom::cli {

using nlohmann::json;

enum class Command { kDecompose, kDistance, kSimulate, kVerify, kDistortion, kScaling };
enum class Format { kJson, kCsv };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::kDecompose: return "decompose";
    case Command::kDistance: return "distance";
    case Command::kSimulate: return "simulate";
    case Command::kVerify: return "verify";
    case Command::kDistortion: return "distortion";
    case Command::kScaling: return "scaling";
  }
  return "unknown";
}

inline constexpr int kExitOk = 0;
inline constexpr int kExitBoundFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInfeasible = 3;

/// Name of the environment variable holding the default report directory.
inline constexpr const char* kOutputDirEnv = "QCGEOM_OUTPUT_DIR";

struct RunConfig {
  Command command = Command::kVerify;
  std::string matrix_path;    // decompose
  std::string unitary_path;   // distance, verify
  std::string schedule_path;  // simulate, scaling
  std::string gates_out;      // simulate: optional gate sequence file
  std::optional<int> n;       // distortion
  std::optional<double> p;    // defaults to 2^n
  std::string delta = "auto";
  std::vector<double> deltas{0.2, 0.1, 0.05};
  double auto_c = 1.0;
  int segments = 8;
  int restarts = 16;
  int evaluations = 4000;
  double tolerance = 1e-6;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  bool symmetric = false;
  std::string out;
  Format format = Format::kJson;
};

struct Outcome {
  int exit_code = kExitOk;
  std::string report;
  std::string error;
};

namespace detail {

inline MetricConfig metric_for(const RunConfig& cfg, int n) {
  return cfg.p ? MetricConfig::make(n, *cfg.p) : MetricConfig::with_default_penalty(n);
}

inline OptimizerSettings optimizer_for(const RunConfig& cfg) {
  OptimizerSettings opt;
  opt.segments = cfg.segments;
  opt.restarts = cfg.restarts;
  opt.seed = cfg.seed;
  opt.max_evaluations = cfg.evaluations;
  opt.endpoint_tolerance = cfg.tolerance;
  return opt;
}

inline json resolved_config(const RunConfig& cfg, const std::optional<MetricConfig>& metric) {
  json c{{"command", command_name(cfg.command)},
         {"seed", cfg.seed},
         {"format", cfg.format == Format::kJson ? "json" : "csv"}};
  switch (cfg.command) {
    case Command::kDecompose:
      c["matrix"] = cfg.matrix_path;
      break;
    case Command::kDistance:
    case Command::kVerify:
      c["unitary"] = cfg.unitary_path;
      c["segments"] = cfg.segments;
      c["restarts"] = cfg.restarts;
      c["evaluations"] = cfg.evaluations;
      c["tolerance"] = cfg.tolerance;
      break;
    case Command::kSimulate:
      c["schedule"] = cfg.schedule_path;
      c["delta"] = cfg.delta;
      c["auto_c"] = cfg.auto_c;
      c["order"] = cfg.symmetric ? "symmetric" : "first";
      c["segments"] = cfg.segments;
      c["restarts"] = cfg.restarts;
      c["evaluations"] = cfg.evaluations;
      c["tolerance"] = cfg.tolerance;
      if (!cfg.gates_out.empty()) c["gates_out"] = cfg.gates_out;
      break;
    case Command::kDistortion:
      c["samples"] = cfg.samples;
      break;
    case Command::kScaling:
      c["schedule"] = cfg.schedule_path;
      c["deltas"] = cfg.deltas;
      break;
  }
  if (metric) {
    c["n"] = metric->n;
    c["p"] = metric->p;
    c["k"] = metric->k;
  }
  return c;
}

inline std::string require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw ParseError(std::string("missing required flag ") + flag);
  return path;
}

inline json run_decompose(const RunConfig& cfg, std::optional<MetricConfig>& metric,
                          std::vector<BoundReport>&) {
  const std::string file = require_path(cfg.matrix_path, "--matrix");
  int n = 0;
  const CMatrix h = io::parse_matrix(io::load_json(file), file, &n);
  CoeffVector y = [&] {
    try {
      return decompose(h, n);
    } catch (const ValidationError& e) {
      throw ValidationError(file + ": " + e.what());
    }
  }();
  metric = metric_for(cfg, n);
  return json{{"n", n},
              {"partition_k", partition_k(n)},
              {"coefficients", io::coeffs_to_json(y)},
              {"reconstruction_error", max_abs(reconstruct(y) - h)}};
}

inline json run_distance(const RunConfig& cfg, std::optional<MetricConfig>& metric,
                         std::vector<BoundReport>& bounds) {
  const std::string file = require_path(cfg.unitary_path, "--unitary");
  const Unitary u = io::parse_unitary(io::load_json(file), file);
  metric = metric_for(cfg, u.n());
  const DistanceEstimate est = distance_upper(u, *metric, optimizer_for(cfg));
  bounds.push_back(BoundReport::make("distance_sandwich", est.lower, est.upper,
                                     std::numeric_limits<double>::infinity()));
  return json{{"distance", io::distance_to_json(est)}};
}

inline json run_verify(const RunConfig& cfg, std::optional<MetricConfig>& metric,
                       std::vector<BoundReport>& bounds) {
  const std::string file = require_path(cfg.unitary_path, "--unitary");
  const Unitary u = io::parse_unitary(io::load_json(file), file);
  metric = metric_for(cfg, u.n());
  const Unitary id = Unitary::identity(u.n());

  json results;
  const DistanceEstimate est = distance_upper(u, *metric, optimizer_for(cfg));
  results["distance"] = io::distance_to_json(est);
  bounds.push_back(BoundReport::make("distance_sandwich", est.lower, est.upper,
                                     std::numeric_limits<double>::infinity()));

  const BoundReport seg = check_segment_distortion(id, u, *metric);
  bounds.push_back(seg);

  // Equal chart steps along the one-parameter subgroup through U.
  const CoeffVector y = log_coords(u, id);
  if (!y.is_zero()) {
    const auto steps = static_cast<std::size_t>(cfg.segments);
    double rho_inf = std::numeric_limits<double>::infinity();
    double rho_sup = 0.0;
    Unitary prev = id;
    for (std::size_t s = 1; s <= steps; ++s) {
      const Unitary next =
          exp_coords(y.scaled(static_cast<double>(s) / static_cast<double>(steps)), id);
      const double rho = chart_segment_rho(prev, next);
      rho_inf = std::min(rho_inf, rho);
      rho_sup = std::max(rho_sup, rho);
      prev = next;
    }
    const DistortionConstants dc = distortion_constants(*metric);
    const double length = minkowski_norm(y, *metric);
    bounds.push_back(check_decomposition(steps, rho_inf, rho_sup, length, dc.m_small, dc.m_big));
    results["decomposition"] = json{{"steps", steps},
                                    {"rho_inf", rho_inf},
                                    {"rho_sup", rho_sup},
                                    {"length", length}};
  }
  return results;
}

inline std::optional<double> parse_delta(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("flag --delta: expected a positive number or \"auto\", got \"" + text + "\"");
  }
}

inline json run_simulate(const RunConfig& cfg, std::optional<MetricConfig>& metric,
                         std::vector<BoundReport>& bounds) {
  const std::string file = require_path(cfg.schedule_path, "--schedule");
  const Schedule schedule = io::parse_schedule(io::load_json(file), file);
  metric = metric_for(cfg, schedule.n());
  DeltaChoice choice = AutoDelta{cfg.auto_c, optimizer_for(cfg)};
  if (auto fixed = parse_delta(cfg.delta)) choice = *fixed;
  const SimulationResult r = simulate(schedule, *metric, choice,
                                      cfg.symmetric ? TrotterOrder::kSymmetric
                                                    : TrotterOrder::kFirst);
  bounds.push_back(check_sim_sandwich(r, *metric));
  double rho_sum = 0.0;
  for (const auto& g : r.gate_sequence.gates) rho_sum += std::abs(g.angle);
  bounds.push_back(BoundReport::make("segment_length_identity", rho_sum, r.exact_path_length,
                                     rho_sum));
  bounds.push_back(check_length_dominance(r));
  if (!cfg.gates_out.empty()) {
    io::write_atomic(cfg.gates_out, io::gates_to_json(r.gate_sequence).dump(2) + "\n");
  }
  return json{{"simulation", io::simulation_to_json(r)}};
}

inline json run_distortion(const RunConfig& cfg, std::optional<MetricConfig>& metric,
                           std::vector<BoundReport>& bounds) {
  if (!cfg.n) throw ParseError("missing required flag --n");
  metric = metric_for(cfg, *cfg.n);
  const DistortionEstimate est =
      estimate_distortion(penalty_norm_fn(*metric), metric->n, cfg.samples, cfg.seed);
  const DistortionConstants exact = distortion_constants(*metric);
  bounds.push_back(BoundReport::make("distortion_m_small", exact.m_small, est.m_small, exact.m_big));
  bounds.push_back(BoundReport::make("distortion_m_big", exact.m_small, est.m_big, exact.m_big));
  return json{{"estimate", json{{"m_small", est.m_small}, {"m_big", est.m_big},
                                {"samples", est.samples}}},
              {"exact", json{{"m_small", exact.m_small}, {"m_big", exact.m_big}}}};
}

inline json run_scaling(const RunConfig& cfg, std::optional<MetricConfig>& metric,
                        std::vector<BoundReport>& bounds) {
  const std::string file = require_path(cfg.schedule_path, "--schedule");
  const Schedule schedule = io::parse_schedule(io::load_json(file), file);
  metric = metric_for(cfg, schedule.n());
  const ScalingReport rep = corollary2_scaling(schedule, *metric, cfg.deltas);
  json points = json::array();
  for (const auto& pt : rep.points) {
    points.push_back(json{{"delta", pt.delta},
                          {"gate_count", pt.gate_count},
                          {"approx_error", pt.approx_error},
                          {"exact_path_length", pt.exact_path_length}});
  }
  for (const auto& b : rep.sandwich_reports) bounds.push_back(b);
  bounds.push_back(BoundReport::make("gate_count_slope", 2.0 - 0.15, rep.slope, 2.0 + 0.15));
  return json{{"points", std::move(points)},
              {"slope", rep.slope},
              {"intercept", rep.intercept},
              {"residual", rep.residual}};
}

}  // namespace detail

/// Runs one subcommand and renders its report. Never throws for input
/// problems; they map onto the exit code and `error`.
inline Outcome execute(const RunConfig& cfg) {
  Outcome outcome;
  std::optional<MetricConfig> metric;
  std::vector<BoundReport> bounds;
  json results;
  try {
    if (cfg.p && !(*cfg.p >= 1.0)) throw ParseError("flag --p: penalty must be >= 1");
    switch (cfg.command) {
      case Command::kDecompose: results = detail::run_decompose(cfg, metric, bounds); break;
      case Command::kDistance: results = detail::run_distance(cfg, metric, bounds); break;
      case Command::kSimulate: results = detail::run_simulate(cfg, metric, bounds); break;
      case Command::kVerify: results = detail::run_verify(cfg, metric, bounds); break;
      case Command::kDistortion: results = detail::run_distortion(cfg, metric, bounds); break;
      case Command::kScaling: results = detail::run_scaling(cfg, metric, bounds); break;
    }
  } catch (const InfeasibleError& e) {
    outcome.exit_code = kExitInfeasible;
    outcome.error = e.what();
    return outcome;
  } catch (const std::exception& e) {
    outcome.exit_code = kExitInvalidInput;
    outcome.error = e.what();
    return outcome;
  }

  if (metric) results["metric"] = io::metric_to_json(*metric);
  bool all_pass = true;
  json bound_list = json::array();
  for (const auto& b : bounds) {
    all_pass = all_pass && b.passed;
    bound_list.push_back(io::bound_to_json(b));
  }
  if (cfg.format == Format::kCsv) {
    outcome.report = io::bounds_to_csv(bounds);
  } else {
    const json doc{{"version", "1"},
                   {"config", detail::resolved_config(cfg, metric)},
                   {"results", std::move(results)},
                   {"bound_reports", std::move(bound_list)}};
    outcome.report = doc.dump(2) + "\n";
  }
  if (!all_pass) {
    outcome.exit_code = kExitBoundFailure;
    outcome.error = "one or more bound checks failed";
  }
  return outcome;
}

/// Where the report goes: --out, else $QCGEOM_OUTPUT_DIR/<command>.<ext>,
/// else standard output (empty path).
inline std::filesystem::path output_path(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    return std::filesystem::path(dir) /
           (std::string(command_name(cfg.command)) +
            (cfg.format == Format::kJson ? ".json" : ".csv"));
  }
  return {};
}

/// execute() plus report emission; returns the process exit status.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  Outcome outcome = execute(cfg);
  if (!outcome.report.empty()) {
    const auto path = output_path(cfg);
    try {
      if (path.empty()) out << outcome.report;
      else io::write_atomic(path, outcome.report);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalidInput;
    }
  }
  if (!outcome.error.empty()) err << "error: " << outcome.error << '\n';
  return outcome.exit_code;
}

}  // namespace qcgeom::cli
