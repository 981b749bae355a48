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

#include <CLI11.hpp>

#include <map>
#include <string>

#include "qcgeom/cli.hpp"

namespace {

using qcgeom::cli::Command;
using qcgeom::cli::Format;
using qcgeom::cli::RunConfig;

void add_metric_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--p", cfg.p, "penalty factor for weight>=3 directions (default 2^n)");
}

void add_optimizer_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--segments", cfg.segments, "schedule segments S")->capture_default_str();
  sub->add_option("--restarts", cfg.restarts, "random restarts R")->capture_default_str();
  sub->add_option("--evaluations", cfg.evaluations, "objective evaluations per restart")
      ->capture_default_str();
  sub->add_option("--tolerance", cfg.tolerance, "endpoint tolerance (Frobenius)")
      ->capture_default_str();
}

void add_output_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--out", cfg.out, "report file (default: $QCGEOM_OUTPUT_DIR or stdout)");
  const std::map<std::string, Format> formats{{"json", Format::kJson}, {"csv", Format::kCsv}};
  sub->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcgeom: circuit-complexity geometry on SU(2^n)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* decompose = app.add_subcommand("decompose", "Pauli coefficients of a traceless Hermitian matrix");
  decompose->add_option("--matrix", cfg.matrix_path, "matrix JSON file")->required();
  add_output_flags(decompose, cfg);

  auto* distance = app.add_subcommand("distance", "upper/lower bounds on d_F(I, U)");
  distance->add_option("--unitary", cfg.unitary_path, "unitary JSON file")->required();
  add_metric_flags(distance, cfg);
  add_optimizer_flags(distance, cfg);
  add_output_flags(distance, cfg);

  auto* verify = app.add_subcommand("verify", "distance bounds and chart sandwich checks for U");
  verify->add_option("--unitary", cfg.unitary_path, "unitary JSON file")->required();
  add_metric_flags(verify, cfg);
  add_optimizer_flags(verify, cfg);
  add_output_flags(verify, cfg);

  auto* simulate = app.add_subcommand("simulate", "three-step standard simulation of a schedule");
  simulate->add_option("--schedule", cfg.schedule_path, "schedule JSON file")->required();
  simulate->add_option("--delta", cfg.delta, "slice width or \"auto\"")->capture_default_str();
  simulate->add_option("--auto-c", cfg.auto_c, "constant c in Delta = c/(n^2 d)")
      ->capture_default_str();
  simulate->add_option("--gates-out", cfg.gates_out, "write the gate sequence here");
  simulate->add_flag("--symmetric", cfg.symmetric, "symmetric (second-order) product ordering");
  add_metric_flags(simulate, cfg);
  add_optimizer_flags(simulate, cfg);
  add_output_flags(simulate, cfg);

  auto* distortion = app.add_subcommand("distortion", "Monte Carlo distortion constants of F_p");
  distortion->add_option("--n", cfg.n, "qubit count")->required();
  distortion->add_option("--samples", cfg.samples, "sample count")->capture_default_str();
  add_metric_flags(distortion, cfg);
  add_output_flags(distortion, cfg);

  auto* scaling = app.add_subcommand("scaling", "gate-count scaling over slice widths");
  scaling->add_option("--schedule", cfg.schedule_path, "schedule JSON file")->required();
  scaling->add_option("--deltas", cfg.deltas, "slice widths")->delimiter(',')->capture_default_str();
  add_metric_flags(scaling, cfg);
  add_output_flags(scaling, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qcgeom::cli::kExitInvalidInput;
  }

  if (decompose->parsed()) cfg.command = Command::kDecompose;
  else if (distance->parsed()) cfg.command = Command::kDistance;
  else if (verify->parsed()) cfg.command = Command::kVerify;
  else if (simulate->parsed()) cfg.command = Command::kSimulate;
  else if (distortion->parsed()) cfg.command = Command::kDistortion;
  else cfg.command = Command::kScaling;

  return qcgeom::cli::run(cfg);
}
