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

#include "oracles.hpp"
#include "qcgeom/bounds_checker.hpp"

namespace qcgeom {
namespace {

CoeffVector axis(int n, const char* word, double value) {
  CoeffVector y(n);
  y.set(word, value);
  return y;
}

TEST(BoundReport, PassAndSlack) {
  const auto r = BoundReport::make("x", 1.0, 2.0, 3.0);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.slack.first, 1.0);
  EXPECT_EQ(r.slack.second, 1.0);
  EXPECT_TRUE(BoundReport::make("edge", 1.0, 1.0 - 5e-10, 2.0).passed);
  EXPECT_FALSE(BoundReport::make("below", 1.0, 1.0 - 2e-9, 2.0).passed);
  EXPECT_FALSE(BoundReport::make("above", 1.0, 2.0 + 2e-9, 2.0).passed);
}

TEST(EstimateDistortion, EuclideanIsExactlyOne) {
  const auto est = estimate_distortion(euclidean_norm_fn(), 2, 5000, 1);
  EXPECT_NEAR(est.m_small, 1.0, 1e-15);
  EXPECT_NEAR(est.m_big, 1.0, 1e-15);
}

TEST(EstimateDistortion, PenaltyMetricEnvelope) {
  const auto cfg = MetricConfig::make(3, 4.0);
  const auto est = estimate_distortion(penalty_norm_fn(cfg), 3, 20000, 2);
  EXPECT_GE(est.m_small, 1.0 - 1e-12);
  EXPECT_LE(est.m_big, 4.0 + 1e-12);
  EXPECT_NEAR(est.m_small, 1.0, 0.02);
  EXPECT_NEAR(est.m_big, 4.0, 0.08);
}

TEST(EstimateDistortion, QuadraticNormSpectrum) {
  // Known spectrum {1, 4, 9} in a rotated basis: extrema are sqrt of extremes.
  auto rng = make_rng(3, Stream::kTest);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i) g.col(i) = gaussian_vector(rng, 3);
  const Eigen::MatrixXd q = g.householderQr().householderQ();
  const Eigen::MatrixXd a = q * Eigen::Vector3d(1.0, 4.0, 9.0).asDiagonal() * q.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const double lo = std::sqrt(es.eigenvalues().minCoeff());
  const double hi = std::sqrt(es.eigenvalues().maxCoeff());
  const auto est = estimate_distortion(quadratic_norm_fn(a), 1, 100000, 4);
  EXPECT_GE(est.m_small, lo - 1e-12);
  EXPECT_LE(est.m_big, hi + 1e-12);
  EXPECT_LE(est.m_small, lo * 1.02);
  EXPECT_GE(est.m_big, hi * 0.98);
}

TEST(EstimateDistortion, RangeWidensWithSamples) {
  const auto cfg = MetricConfig::make(3, 4.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t samples = 1000; samples <= 64000; samples *= 2) {
    const auto est = estimate_distortion(penalty_norm_fn(cfg), 3, samples, 5);
    EXPECT_LE(est.m_small, lo);
    EXPECT_GE(est.m_big, hi);
    EXPECT_LE(est.m_small, est.m_big);
    lo = est.m_small;
    hi = est.m_big;
  }
}

TEST(EstimateDistortion, Errors) {
  EXPECT_THROW(estimate_distortion(euclidean_norm_fn(), 1, 0, 1), DomainError);
  TangentNorm inf_norm = [](const Eigen::VectorXd&) { return HUGE_VAL; };
  EXPECT_THROW(estimate_distortion(inf_norm, 1, 10, 1), EvaluationError);
}

TEST(SegmentDistortion, LowWeightSaturatesLower) {
  const auto cfg = MetricConfig::make(3, 5.0);
  const Unitary x0 = exp_coords(axis(3, "YZI", 0.9), Unitary::identity(3));
  const Unitary x1 = exp_coords(axis(3, "XIZ", 0.35), x0);
  const auto r = check_segment_distortion(x0, x1, cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.observed, r.lower, 1e-12);
  EXPECT_NEAR(r.lower, 0.35, 1e-12);
}

TEST(SegmentDistortion, PenalizedSaturatesUpper) {
  const auto cfg = MetricConfig::make(3, 5.0);
  const Unitary x1 = exp_coords(axis(3, "XXX", 0.2), Unitary::identity(3));
  const auto r = check_segment_distortion(Unitary::identity(3), x1, cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.observed, 5.0 * 0.2, 1e-12);
  EXPECT_NEAR(r.observed, r.upper, 1e-12);
}

TEST(SegmentDistortion, RandomPairsPass) {
  auto rng = make_rng(6, Stream::kTest);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const auto cfg = MetricConfig::make(n, 1.0 + trial % 5);
    const Unitary x0(n, oracle::expm(random_traceless_hermitian(rng, n)));
    const Unitary x1 = exp_coords(random_coeffs(rng, n, 1.0), x0);
    EXPECT_TRUE(check_segment_distortion(x0, x1, cfg).passed);
  }
}

TEST(Theorem1Bounds, Arithmetic) {
  auto b = theorem1_bounds(1.0, 0.1, 0.1, 1.0, 1.0);
  EXPECT_NEAR(b.lower, 10.0, 1e-12);
  EXPECT_NEAR(b.upper, 10.0, 1e-12);
  b = theorem1_bounds(2.0, 0.1, 0.2, 1.0, 4.0);
  EXPECT_NEAR(b.lower, 2.5, 1e-12);
  EXPECT_NEAR(b.upper, 20.0, 1e-12);
  EXPECT_THROW(theorem1_bounds(0.0, 0.1, 0.1, 1.0, 1.0), DomainError);
  EXPECT_THROW(theorem1_bounds(1.0, -0.1, 0.1, 1.0, 1.0), DomainError);
}

TEST(Theorem1Bounds, Monotonicity) {
  const auto base = theorem1_bounds(1.0, 0.1, 0.2, 1.0, 2.0);
  const auto more_d = theorem1_bounds(1.5, 0.1, 0.2, 1.0, 2.0);
  EXPECT_GT(more_d.lower, base.lower);
  EXPECT_GT(more_d.upper, base.upper);
  EXPECT_LT(theorem1_bounds(1.0, 0.1, 0.2, 1.0, 3.0).lower, base.lower);
}

TEST(Theorem2Bounds, Arithmetic) {
  auto b = theorem2_bounds(3.0, 0.5, 1.0, 1.0, 2.0);
  EXPECT_EQ(b.lower, 3.0);
  EXPECT_EQ(b.upper, 12.0);
  b = theorem2_bounds(2.0, 0.25, 0.25, 3.0, 3.0);
  EXPECT_EQ(b.lower, 8.0);
  EXPECT_EQ(b.upper, 8.0);
  EXPECT_GT(theorem2_bounds(3.0, 0.5, 1.0, 1.0, 3.0).upper, 12.0);
  EXPECT_THROW(theorem2_bounds(1.0, 0.0, 1.0, 1.0, 1.0), DomainError);
}

// Chart-step decomposition of a single-qubit subgroup geodesic with unequal
// steps: the count must sit inside both theorem bounds.
TEST(TheoremBounds, UnequalStepsOnSubgroupGeodesic) {
  const double theta = 1.1;
  const std::vector<double> fractions{0.05, 0.2, 0.1, 0.3, 0.15, 0.2};
  const Unitary id = Unitary::identity(1);
  std::vector<Unitary> points{id};
  double acc = 0.0;
  for (double f : fractions) {
    acc += f * theta;
    points.push_back(exp_coords(axis(1, "Y", acc), id));
  }
  double rho_inf = 1e9;
  double rho_sup = 0.0;
  for (std::size_t s = 0; s + 1 < points.size(); ++s) {
    const double rho = chart_segment_rho(points[s], points[s + 1]);
    rho_inf = std::min(rho_inf, rho);
    rho_sup = std::max(rho_sup, rho);
  }
  const double m = static_cast<double>(fractions.size());
  const auto t1 = theorem1_bounds(theta, rho_inf, rho_sup, 1.0, 1.0);
  EXPECT_LE(t1.lower, m + 1e-9);
  EXPECT_GE(t1.upper, m - 1e-9);
  const auto t2 = theorem2_bounds(theta, rho_inf, rho_sup, 1.0, 1.0);
  EXPECT_LE(t2.lower, m + 1e-9);
  EXPECT_GE(t2.upper, m - 1e-9);
  EXPECT_TRUE(check_decomposition(fractions.size(), rho_inf, rho_sup, theta, 1.0, 1.0).passed);
}

TEST(SimSandwich, UniformCoefficientsSaturateLower) {
  CoeffVector y(2);
  y.set("XI", 0.5);
  y.set("ZZ", -0.5);
  const auto cfg = MetricConfig::make(2, 3.0);
  const auto r = simulate(Schedule::constant(y, 1.0), cfg, 0.25);
  const auto rep = check_sim_sandwich(r, cfg);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.lower, rep.observed, 1e-12);
}

TEST(SimSandwich, NegativeControl) {
  SimulationResult fake;
  fake.gate_count = 10;
  fake.rho_inf = 0.1;
  fake.rho_sup = 0.2;
  fake.exact_path_length = 0.5;  // below 10 * 0.1
  const auto cfg = MetricConfig::make(2, 2.0);
  EXPECT_FALSE(check_sim_sandwich(fake, cfg).passed);
  fake.exact_path_length = 4.5;  // above 10 * 2 * 0.2
  EXPECT_FALSE(check_sim_sandwich(fake, cfg).passed);
  fake.exact_path_length = 2.0;
  EXPECT_TRUE(check_sim_sandwich(fake, cfg).passed);
}

TEST(Corollary2Scaling, SlopeTwo) {
  CoeffVector y(2);
  y.set("XI", 0.8);
  y.set("ZZ", 0.6);
  const auto cfg = MetricConfig::make(2, 4.0);
  const std::vector<double> deltas{0.2, 0.1, 0.05};
  const auto rep = corollary2_scaling(Schedule::constant(y, 1.0), cfg, deltas);
  EXPECT_NEAR(rep.slope, 2.0, 0.15);
  for (const auto& b : rep.sandwich_reports) EXPECT_TRUE(b.passed);
}

TEST(Corollary2Scaling, SingleTermClosedFormCount) {
  CoeffVector y(2);
  y.set("IX", 0.3);
  const auto cfg = MetricConfig::make(2, 4.0);
  const std::vector<double> deltas{0.25, 0.125, 0.0625};
  const auto rep = corollary2_scaling(Schedule::constant(y, 1.0), cfg, deltas);
  for (const auto& pt : rep.points) {
    const auto per = static_cast<std::size_t>(std::llround(1.0 / pt.delta));
    EXPECT_EQ(pt.gate_count, per * per);
  }
  EXPECT_NEAR(rep.slope, 2.0, 1e-12);
}

TEST(Corollary2Scaling, Preconditions) {
  const Schedule s = Schedule::constant(CoeffVector(1), 1.0);
  const auto cfg = MetricConfig::make(1, 1.0);
  const std::vector<double> two{0.2, 0.05};
  EXPECT_THROW(corollary2_scaling(s, cfg, two), DomainError);
  const std::vector<double> narrow{0.2, 0.15, 0.1};
  EXPECT_THROW(corollary2_scaling(s, cfg, narrow), DomainError);
}

}  // namespace
}  // namespace qcgeom
