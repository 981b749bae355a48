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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcgeom/bounds_checker.hpp"
#include "qcgeom/errors.hpp"
#include "qcgeom/finsler_metric.hpp"
#include "qcgeom/manifold_charts.hpp"
#include "qcgeom/path_geometry.hpp"
#include "qcgeom/pauli_algebra.hpp"
#include "qcgeom/standard_simulation.hpp"

// JSON file formats:
//   matrix    { "n": int, "re": [[...]], "im": [[...]] }   (row-major, 2^n x 2^n)
//   schedule  { "n": int, "segments": [ { "tau": real, "y": { "XZI": real, ... } } ] }
//             or { "n": int, "T": real, "interpolation": "constant" | "linear",
//                  "samples": [ { "t": real, "y": { ... } } ] }
//   gates     { "n": int, "delta": real, "gates": [ { "pauli": "XZ", "angle": real } ] }

namespace qcgeom::io {

using nlohmann::json;

inline json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(file.string() + ": invalid JSON: " + e.what());
  }
}

namespace detail {

inline const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected a JSON object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + name + "\"");
  return *it;
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + ": expected a finite number");
  return x;
}

inline int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

}  // namespace detail

inline CMatrix parse_matrix(const json& doc, const std::string& where, int* n_out) {
  const int n = detail::integer(detail::field(doc, "n", where), where + ": field \"n\"");
  if (n < 1 || n > kMaxQubits) throw ParseError(where + ": field \"n\" out of range");
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  CMatrix m(d, d);
  for (const char* part : {"re", "im"}) {
    const std::string fw = where + ": field \"" + part + "\"";
    const json& rows = detail::field(doc, part, where);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
      throw ParseError(fw + ": expected " + std::to_string(d) + " rows (dimension 2^n)");
    }
    for (Eigen::Index r = 0; r < d; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        throw ParseError(fw + ": row " + std::to_string(r) + " must have " +
                         std::to_string(d) + " entries");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        const double v = detail::number(row[static_cast<std::size_t>(c)], fw);
        if (part[0] == 'r') m(r, c) = Complex(v, 0.0); else m(r, c) += Complex(0.0, v);
      }
    }
  }
  if (n_out) *n_out = n;
  return m;
}

inline json matrix_to_json(const CMatrix& m, int n) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Unitary parse_unitary(const json& doc, const std::string& where) {
  int n = 0;
  CMatrix m = parse_matrix(doc, where, &n);
  try {
    return Unitary(n, std::move(m));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

inline CoeffVector parse_coeffs(const json& obj, int n, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object of Pauli words");
  CoeffVector y(n);
  for (const auto& [word, value] : obj.items()) {
    const std::string fw = where + ": word \"" + word + "\"";
    if (static_cast<int>(word.size()) != n) throw ParseError(fw + ": length must equal n");
    PauliString s = [&] {
      try {
        return PauliString::parse(word);
      } catch (const DomainError& e) {
        throw ParseError(fw + ": " + e.what());
      }
    }();
    if (s.index() == 0) throw ParseError(fw + ": identity component is not allowed");
    y[PauliBasis::get(n).position_of(s)] = detail::number(value, fw);
  }
  return y;
}

/// Nonzero coefficients keyed by Pauli word.
inline json coeffs_to_json(const CoeffVector& y) {
  json out = json::object();
  const PauliBasis& basis = PauliBasis::get(y.n());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (y[i] != 0.0) out[basis[i].str()] = y[i];
  }
  return out;
}

inline Path parse_path(const json& doc, const std::string& where) {
  const int n = detail::integer(detail::field(doc, "n", where), where + ": field \"n\"");
  if (n < 1 || n > kMaxQubits) throw ParseError(where + ": field \"n\" out of range");
  const json& segs = detail::field(doc, "segments", where);
  if (!segs.is_array()) throw ParseError(where + ": field \"segments\": expected an array");
  Path path(n);
  for (std::size_t j = 0; j < segs.size(); ++j) {
    const std::string sw = where + ": segments[" + std::to_string(j) + "]";
    const double tau = detail::number(detail::field(segs[j], "tau", sw), sw + ".tau");
    if (!(tau > 0.0)) throw ParseError(sw + ".tau: must be positive");
    path.append({parse_coeffs(detail::field(segs[j], "y", sw), n, sw + ".y"), tau});
  }
  return path;
}

inline json path_to_json(const Path& path) {
  json segs = json::array();
  for (const auto& s : path.segments()) {
    segs.push_back(json{{"tau", s.tau}, {"y", coeffs_to_json(s.y)}});
  }
  return json{{"n", path.n()}, {"segments", std::move(segs)}};
}

inline Schedule parse_schedule(const json& doc, const std::string& where) {
  if (doc.is_object() && doc.contains("segments")) {
    const Path path = parse_path(doc, where);
    if (path.empty()) throw ParseError(where + ": field \"segments\": must not be empty");
    return Schedule::from_path(path);
  }
  const int n = detail::integer(detail::field(doc, "n", where), where + ": field \"n\"");
  if (n < 1 || n > kMaxQubits) throw ParseError(where + ": field \"n\" out of range");
  const double total = detail::number(detail::field(doc, "T", where), where + ": field \"T\"");
  Interpolation mode = Interpolation::kPiecewiseConstant;
  if (doc.contains("interpolation")) {
    const json& m = doc["interpolation"];
    if (m == "linear") mode = Interpolation::kPiecewiseLinear;
    else if (m != "constant") {
      throw ParseError(where + ": field \"interpolation\": expected \"constant\" or \"linear\"");
    }
  }
  const json& raw = detail::field(doc, "samples", where);
  if (!raw.is_array()) throw ParseError(where + ": field \"samples\": expected an array");
  std::vector<ScheduleSample> samples;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const std::string sw = where + ": samples[" + std::to_string(j) + "]";
    samples.push_back({detail::number(detail::field(raw[j], "t", sw), sw + ".t"),
                       parse_coeffs(detail::field(raw[j], "y", sw), n, sw + ".y")});
  }
  try {
    return Schedule(n, std::move(samples), total, mode);
  } catch (const DomainError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json gates_to_json(const GateSequence& seq) {
  json gates = json::array();
  for (const auto& g : seq.gates) gates.push_back(json{{"pauli", g.pauli.str()}, {"angle", g.angle}});
  return json{{"n", seq.n}, {"delta", seq.delta}, {"gates", std::move(gates)}};
}

inline GateSequence parse_gates(const json& doc, const std::string& where) {
  GateSequence seq;
  seq.n = detail::integer(detail::field(doc, "n", where), where + ": field \"n\"");
  if (seq.n < 1 || seq.n > kMaxQubits) throw ParseError(where + ": field \"n\" out of range");
  seq.delta = detail::number(detail::field(doc, "delta", where), where + ": field \"delta\"");
  seq.substep = seq.delta * seq.delta;
  const json& gates = detail::field(doc, "gates", where);
  if (!gates.is_array()) throw ParseError(where + ": field \"gates\": expected an array");
  for (std::size_t j = 0; j < gates.size(); ++j) {
    const std::string gw = where + ": gates[" + std::to_string(j) + "]";
    const json& word = detail::field(gates[j], "pauli", gw);
    if (!word.is_string() || static_cast<int>(word.get<std::string>().size()) != seq.n) {
      throw ParseError(gw + ".pauli: expected a Pauli word of length n");
    }
    PauliString s = [&] {
      try {
        return PauliString::parse(word.get<std::string>());
      } catch (const DomainError& e) {
        throw ParseError(gw + ".pauli: " + e.what());
      }
    }();
    if (s.weight() == 0 || s.weight() > 2) {
      throw ParseError(gw + ".pauli: gate strings must have weight 1 or 2");
    }
    seq.gates.push_back({s, detail::number(detail::field(gates[j], "angle", gw), gw + ".angle")});
  }
  return seq;
}

inline json metric_to_json(const MetricConfig& cfg) {
  return json{{"n", cfg.n}, {"p", cfg.p}, {"k", cfg.k}};
}

inline json bound_to_json(const BoundReport& r) {
  return json{{"context", r.context},
              {"lower", r.lower},
              {"observed", r.observed},
              {"upper", r.upper},
              {"passed", r.passed},
              {"slack", json::array({r.slack.first, r.slack.second})}};
}

inline json distance_to_json(const DistanceEstimate& e) {
  return json{{"upper", e.upper},
              {"lower", e.lower},
              {"witness_path", path_to_json(e.witness_path)},
              {"optimizer_stats",
               json{{"restarts", e.optimizer_stats.restarts},
                    {"iterations", e.optimizer_stats.iterations},
                    {"endpoint_error", e.optimizer_stats.endpoint_error}}}};
}

inline json simulation_to_json(const SimulationResult& r) {
  return json{{"gate_count", r.gate_count},
              {"delta", r.delta},
              {"substep", r.gate_sequence.substep},
              {"exact_path_length", r.exact_path_length},
              {"approx_error", r.approx_error},
              {"rho_inf", r.rho_inf},
              {"rho_sup", r.rho_sup},
              {"endpoint_lower", r.endpoint_lower ? json(*r.endpoint_lower) : json(nullptr)}};
}

inline std::string bounds_to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out.precision(17);
  out << "context,lower,observed,upper,passed\n";
  for (const auto& r : reports) {
    out << r.context << ',' << r.lower << ',' << r.observed << ',' << r.upper << ','
        << (r.passed ? "true" : "false") << '\n';
  }
  return out.str();
}

/// Write-temp-then-rename so readers never observe a partial file.
inline void write_atomic(const std::filesystem::path& file, const std::string& contents) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(tmp.string() + ": cannot open for writing");
    out << contents;
    if (!out) throw ParseError(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace qcgeom::io
