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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcgeom/bounds_checker.hpp"
#include "qcgeom/standard_simulation.hpp"

namespace qcgeom {
namespace {

CoeffVector coeffs(int n, std::initializer_list<std::pair<const char*, double>> terms) {
  CoeffVector y(n);
  for (const auto& [w, v] : terms) y.set(w, v);
  return y;
}

double slope_of(const std::vector<double>& xs, const std::vector<double>& ys) {
  return loglog_fit(xs, ys).first;
}

TEST(ProjectHamiltonian, TwoQubitsUnchanged) {
  auto rng = make_rng(1, Stream::kTest);
  const CoeffVector y(2, gaussian_vector(rng, 15));
  EXPECT_EQ(project_hamiltonian(y, MetricConfig::make(2, 4.0)).values(), y.values());
}

TEST(ProjectHamiltonian, DropsWeightThree) {
  const auto cfg = MetricConfig::make(3, 4.0);
  const CoeffVector y = coeffs(3, {{"XXX", 0.7}, {"XII", 0.2}});
  const CoeffVector p = project_hamiltonian(y, cfg);
  EXPECT_EQ(p.at("XXX"), 0.0);
  EXPECT_EQ(p.at("XII"), 0.2);
  EXPECT_TRUE(project_hamiltonian(coeffs(3, {{"XYZ", 0.4}, {"ZZZ", -1.0}}), cfg).is_zero());
}

TEST(SliceMean, ConstantSchedule) {
  const CoeffVector y0 = coeffs(2, {{"XI", 0.3}, {"ZZ", -0.6}});
  const auto means = slice_mean(Schedule::constant(y0, 1.0), 0.25);
  ASSERT_EQ(means.size(), 4u);
  for (const auto& m : means) EXPECT_LT((m.values() - y0.values()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SliceMean, HalfSliceAverage) {
  const double delta = 0.2;
  const CoeffVector a = coeffs(1, {{"X", 0.8}});
  const CoeffVector b = coeffs(1, {{"X", -0.2}, {"Z", 0.4}});
  const Schedule s(1, {{0.0, a}, {delta / 2, b}}, delta);
  const auto means = slice_mean(s, delta);
  ASSERT_EQ(means.size(), 1u);
  EXPECT_LT((means[0].values() - 0.5 * (a.values() + b.values())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SliceMean, LinearRamp) {
  const double delta = 0.3;
  const Schedule ramp(1, {{0.0, CoeffVector(1)}, {delta, coeffs(1, {{"X", delta}})}}, delta,
                      Interpolation::kPiecewiseLinear);
  const auto means = slice_mean(ramp, delta);
  ASSERT_EQ(means.size(), 1u);
  EXPECT_NEAR(means[0].at("X"), delta / 2, 1e-15);
}

TEST(SliceMean, TruncatedFinalSliceUsesTrueWidth) {
  // y = X on [0, 0.5), Z on [0.5, 0.7]; Delta = 0.3 gives widths 0.3, 0.3, 0.1.
  const Schedule s(1, {{0.0, coeffs(1, {{"X", 1.0}})}, {0.5, coeffs(1, {{"Z", 1.0}})}}, 0.7);
  const auto widths = slice_widths(0.7, 0.3);
  ASSERT_EQ(widths.size(), 3u);
  EXPECT_NEAR(widths[2], 0.1, 1e-15);
  const auto means = slice_mean(s, 0.3);
  EXPECT_NEAR(means[1].at("X"), 0.2 / 0.3, 1e-14);
  EXPECT_NEAR(means[1].at("Z"), 0.1 / 0.3, 1e-14);
  EXPECT_NEAR(means[2].at("Z"), 1.0, 1e-14);
}

TEST(SliceMean, Errors) {
  const Schedule s = Schedule::constant(CoeffVector(1), 1.0);
  EXPECT_THROW(slice_mean(s, 0.0), DomainError);
  EXPECT_THROW(slice_mean(s, -0.1), DomainError);
  EXPECT_THROW(slice_mean(s, 1.5), DomainError);
}

TEST(Schedule, Validation) {
  EXPECT_THROW(Schedule(1, {}, 1.0), DomainError);
  EXPECT_THROW(Schedule(1, {{0.5, CoeffVector(1)}, {0.5, CoeffVector(1)}}, 1.0), DomainError);
  EXPECT_THROW(Schedule(1, {{1.5, CoeffVector(1)}}, 1.0), DomainError);
}

TEST(SynthesizeGates, SingleTermIsExact) {
  const auto cfg = MetricConfig::make(2, 4.0);
  const double a = 0.6;
  const std::vector<CoeffVector> means{coeffs(2, {{"ZI", a}})};
  const GateSequence seq = synthesize_gates(means, 0.5, cfg);
  ASSERT_EQ(seq.gates.size(), 2u);
  for (const auto& g : seq.gates) EXPECT_DOUBLE_EQ(g.angle, a * 0.25);
  EXPECT_LT(max_abs(gate_product(seq) - oracle::expm(a * 0.5 * oracle::kron_word("ZI"))), 1e-15);
}

TEST(SynthesizeGates, CommutingTermsAreExact) {
  const auto cfg = MetricConfig::make(2, 1.0);
  const CoeffVector mean = coeffs(2, {{"ZI", 0.7}, {"IZ", -0.4}});
  for (double delta : {0.5, 0.2, 0.1}) {
    const std::vector<CoeffVector> means{mean};
    const GateSequence seq = synthesize_gates(means, delta, cfg);
    EXPECT_LT(max_abs(gate_product(seq) - oracle::expm(reconstruct(mean), delta)), 1e-12);
  }
}

TEST(SynthesizeGates, NonCommutingPerSliceErrorOrder) {
  const auto cfg = MetricConfig::make(2, 1.0);
  const CoeffVector mean = coeffs(2, {{"XI", 0.8}, {"ZZ", 0.6}});
  std::vector<double> deltas{0.2, 0.1, 0.05};
  std::vector<double> errors;
  for (double delta : deltas) {
    const std::vector<CoeffVector> means{mean};
    const GateSequence seq = synthesize_gates(means, delta, cfg);
    errors.push_back(max_abs(gate_product(seq) - oracle::expm(reconstruct(mean), delta)));
  }
  EXPECT_LT(errors[1], errors[0]);
  EXPECT_LT(errors[2], errors[1]);
  EXPECT_GE(slope_of(deltas, errors), 1.8);
}

TEST(SynthesizeGates, SymmetricOrderingIsMoreAccurate) {
  const auto cfg = MetricConfig::make(2, 1.0);
  const std::vector<CoeffVector> means{coeffs(2, {{"XI", 0.8}, {"ZZ", 0.6}})};
  const CMatrix exact = oracle::expm(reconstruct(means[0]), 0.2);
  const double first = max_abs(gate_product(synthesize_gates(means, 0.2, cfg)) - exact);
  const double sym = max_abs(
      gate_product(synthesize_gates(means, 0.2, cfg, {}, TrotterOrder::kSymmetric)) - exact);
  EXPECT_LT(sym, first);
}

TEST(SynthesizeGates, GateStructure) {
  const auto cfg = MetricConfig::make(3, 4.0);
  const std::vector<CoeffVector> means{coeffs(3, {{"XII", 0.5}, {"IZY", -0.9}, {"YIX", 0.1}}),
                                       coeffs(3, {{"IIZ", 1.0}})};
  const GateSequence seq = synthesize_gates(means, 0.25, cfg);
  EXPECT_EQ(seq.gates.size(), 4u * 3 + 4u * 1);
  EXPECT_DOUBLE_EQ(seq.substep, 0.0625);
  for (const auto& g : seq.gates) {
    EXPECT_LE(g.pauli.weight(), 2);
    EXPECT_LE(std::abs(g.angle), 0.0625 + 1e-15);
  }
  // Canonical basis order within a substep.
  EXPECT_EQ(seq.gates[0].pauli.str(), "XII");
  EXPECT_EQ(seq.gates[1].pauli.str(), "IZY");
  EXPECT_EQ(seq.gates[2].pauli.str(), "YIX");
}

TEST(SynthesizeGates, CoefficientBound) {
  const auto cfg = MetricConfig::make(2, 1.0);
  const std::vector<CoeffVector> means{coeffs(2, {{"XI", 1.2}})};
  EXPECT_THROW(synthesize_gates(means, 0.1, cfg), CoefficientBoundError);
  const std::vector<CoeffVector> edge{coeffs(2, {{"XI", 1.0}})};
  EXPECT_NO_THROW(synthesize_gates(edge, 0.1, cfg));
}

TEST(SynthesizeGates, WeightThreeSupportIsContractError) {
  const auto cfg = MetricConfig::make(3, 1.0);
  const std::vector<CoeffVector> means{coeffs(3, {{"XXX", 0.1}})};
  EXPECT_THROW(synthesize_gates(means, 0.1, cfg), ContractError);
}

TEST(Simulate, SingleTermScheduleIsExact) {
  const auto cfg = MetricConfig::make(2, 4.0);
  const Schedule s = Schedule::constant(coeffs(2, {{"XI", 0.5}}), 1.0);
  const SimulationResult r = simulate(s, cfg, 0.25);
  EXPECT_LT(r.approx_error, 1e-12);
  EXPECT_NEAR(r.exact_path_length, 0.5, 1e-15);
  EXPECT_EQ(r.gate_count, 16u);
  EXPECT_DOUBLE_EQ(r.rho_inf, 0.5 * 0.0625);
  EXPECT_DOUBLE_EQ(r.rho_sup, 0.5 * 0.0625);
}

TEST(Simulate, ErrorDecreasesWithDelta) {
  const auto cfg = MetricConfig::make(2, 4.0);
  const Schedule s = Schedule::constant(coeffs(2, {{"XI", 0.8}, {"ZZ", 0.6}}), 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double delta : {0.2, 0.1, 0.05}) {
    const SimulationResult r = simulate(s, cfg, delta);
    EXPECT_LT(r.approx_error, prev + 1e-13);
    prev = r.approx_error;
  }
}

TEST(Simulate, GateChartLengthsEqualAngles) {
  const auto cfg = MetricConfig::make(2, 2.0);
  const Schedule s = Schedule::constant(coeffs(2, {{"XI", 0.8}, {"ZY", -0.6}}), 0.4);
  const SimulationResult r = simulate(s, cfg, 0.2);
  CMatrix acc = CMatrix::Identity(4, 4);
  double total = 0.0;
  for (const auto& g : r.gate_sequence.gates) {
    const Unitary before(2, acc);
    apply_gate(g, acc);
    const double rho = chart_segment_rho(before, Unitary(2, acc));
    EXPECT_NEAR(rho, std::abs(g.angle), 1e-12);
    total += rho;
  }
  EXPECT_NEAR(total, r.exact_path_length, 1e-10);
  // The gate product is the reported approximant, computed the same way.
  EXPECT_EQ(acc, r.approx.matrix());
}

TEST(Simulate, SandwichAndDominanceOnProjectedSchedule) {
  const Schedule s(3,
                   {{0.0, coeffs(3, {{"XII", 0.4}, {"ZZI", -0.3}, {"XXX", 0.7}})},
                    {0.5, coeffs(3, {{"IYZ", 0.5}, {"ZIX", 0.2}})}},
                   1.0);
  for (double p : {1.0, 4.0}) {
    const auto cfg = MetricConfig::make(3, p);
    const SimulationResult r = simulate(s, cfg, 0.1);
    EXPECT_TRUE(check_sim_sandwich(r, cfg).passed);
    ASSERT_TRUE(r.endpoint_lower.has_value());
    EXPECT_LE(*r.endpoint_lower, r.exact_path_length + 1e-12);
    for (const auto& g : r.gate_sequence.gates) EXPECT_LE(g.pauli.weight(), 2);
  }
}

TEST(Simulate, HalvingDeltaQuadruplesGateCount) {
  const auto cfg = MetricConfig::make(2, 4.0);
  const Schedule s = Schedule::constant(coeffs(2, {{"XI", 0.8}, {"ZZ", 0.6}, {"YX", 0.1}}), 1.0);
  const auto a = simulate(s, cfg, 0.2).gate_count;
  const auto b = simulate(s, cfg, 0.1).gate_count;
  const auto c = simulate(s, cfg, 0.05).gate_count;
  EXPECT_EQ(b, 4 * a);
  EXPECT_EQ(c, 4 * b);
}

TEST(Simulate, AutoDeltaFromDistanceEstimate) {
  const auto cfg = MetricConfig::make(2, 4.0);
  const Schedule s = Schedule::constant(coeffs(2, {{"XI", 0.8}, {"ZZ", 0.6}}), 1.0);
  AutoDelta autod;
  autod.optimizer.segments = 2;
  autod.optimizer.restarts = 1;
  autod.optimizer.max_evaluations = 500;
  const SimulationResult r = simulate(s, cfg, autod);
  const double d_hat = distance_upper(r.target, cfg, autod.optimizer).upper;
  EXPECT_NEAR(r.delta, 1.0 / (4.0 * d_hat), 1e-12);
  EXPECT_TRUE(check_sim_sandwich(r, cfg).passed);
}

TEST(Simulate, ZeroScheduleHasNoGates) {
  const auto cfg = MetricConfig::make(3, 4.0);
  const Schedule s = Schedule::constant(coeffs(3, {{"XYZ", 0.5}}), 1.0);
  const SimulationResult r = simulate(s, cfg, 0.5);
  EXPECT_EQ(r.gate_count, 0u);
  EXPECT_EQ(r.exact_path_length, 0.0);
  EXPECT_TRUE(check_sim_sandwich(r, cfg).passed);
}

TEST(Simulate, LinearScheduleEndpointConverges) {
  const auto cfg = MetricConfig::make(2, 1.0);
  const Schedule ramp(2,
                      {{0.0, coeffs(2, {{"ZZ", 0.5}})},
                       {1.0, coeffs(2, {{"XI", 0.9}, {"ZZ", -0.2}})}},
                      1.0, Interpolation::kPiecewiseLinear);
  const double coarse = simulate(ramp, cfg, 0.2).approx_error;
  const double fine = simulate(ramp, cfg, 0.05).approx_error;
  EXPECT_LT(fine, coarse);
}

}  // namespace
}  // namespace qcgeom
