// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnd/record.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qnd/errors.hpp"

namespace qnd {
namespace {

Record constant_record(double value, int n, double dt = 20e-9) {
    Record r;
    r.dt = dt;
    r.samples.assign(static_cast<std::size_t>(n), value);
    return r;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }
double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

TEST(BinomialTaps, PascalRowNormalized) {
    const auto c = binomial_taps(12);
    ASSERT_EQ(c.size(), 13);
    EXPECT_NEAR(c.sum(), 1.0, 1e-15);
    EXPECT_EQ(c(6), 924.0 / 4096.0);
    EXPECT_EQ(c(0), 1.0 / 4096.0);
    for (int k = 0; k <= 12; ++k) EXPECT_EQ(c(k), c(12 - k));
}

// Sum of squared taps is C(24, 12) / 4^12.
TEST(BinomialTaps, NoiseVarianceMatchesCentralBinomial) {
    EXPECT_NEAR(std::pow(binomial_noise_scale(12), 2), 2704156.0 / 16777216.0, 1e-15);
    EXPECT_NEAR(std::pow(binomial_noise_scale(12), 2), 0.1612, 1e-4);
}

TEST(BinomialFilter, PreservesConstantIncludingEdges) {
    const auto out = binomial_filter(constant_record(-2.4, 100), 240e-9);
    for (double v : out.samples) EXPECT_NEAR(v, -2.4, 1e-12);
}

TEST(BinomialFilter, WhiteNoiseVariance) {
    Record r = constant_record(0.0, 200000);
    StreamRng rng(1, 0);
    for (auto& v : r.samples) v = rng.normal();
    const auto raw = binomial_filter(r, 240e-9);
    const auto unit = binomial_filter(r, 240e-9, 1.0);
    double v_raw = 0, v_unit = 0;
    const std::size_t lo = 6, hi = r.samples.size() - 6;
    for (std::size_t k = lo; k < hi; ++k) {
        v_raw += raw.samples[k] * raw.samples[k];
        v_unit += unit.samples[k] * unit.samples[k];
    }
    const double n = static_cast<double>(hi - lo);
    EXPECT_NEAR(v_raw / n, 0.1612, 0.003);
    EXPECT_NEAR(v_unit / n, 1.0, 0.02);
}

// Symmetric taps that sum to one reproduce any straight line, edges included.
TEST(BinomialFilter, PreservesLinearRamp) {
    Record r = constant_record(0.0, 300);
    for (std::size_t k = 0; k < r.samples.size(); ++k) r.samples[k] = 0.3 - 0.01 * static_cast<double>(k);
    const auto out = binomial_filter(r, 240e-9);
    for (std::size_t k = 0; k < r.samples.size(); ++k) EXPECT_NEAR(out.samples[k], r.samples[k], 1e-12);
}

TEST(BinomialFilter, RejectsBadWidths) {
    const auto r = constant_record(0.0, 50);
    EXPECT_THROW(binomial_filter(r, 10e-9), InvalidParameter);
    EXPECT_THROW(binomial_filter(r, 30e-9), InvalidParameter);
    EXPECT_THROW(binomial_filter(r, 60e-9), InvalidParameter);
    EXPECT_THROW(binomial_filter(r, 240e-9, 0.0), InvalidParameter);
}

TEST(TrimEdges, DropsBothEnds) {
    Record r = constant_record(0.0, 10);
    for (int k = 0; k < 10; ++k) r.samples[k] = k;
    const auto t = trim_edges(r, 3);
    ASSERT_EQ(t.samples.size(), 4u);
    EXPECT_EQ(t.samples.front(), 3.0);
    EXPECT_EQ(t.samples.back(), 6.0);
    EXPECT_TRUE(trim_edges(r, 5).samples.empty());
}

TEST(GenerateRecord, GroundRecordFiltersToCenterWithUnitNoise) {
    QubitParams qp;
    qp.p_eq = 0.0;
    const DriveParams drive;
    double sum = 0, sum2 = 0;
    long n = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        const auto rec = generate_record({2.4, 0.0}, qp, 8e-6, drive, -1.0, {3, k});
        ASSERT_EQ(rec.samples.size(), 400u);
        const auto f = trim_edges(binomial_filter(rec, drive.t_m, 1.0), 6);
        for (double v : f.samples) {
            sum += v;
            sum2 += v * v;
            ++n;
        }
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, -2.4, 0.01);
    EXPECT_NEAR(sum2 / n - mean * mean, 1.0, 0.02);
}

TEST(GenerateRecord, DeterministicPerStream) {
    const QubitParams qp;
    const DriveParams drive;
    const auto a = generate_record({2.4, 0.0}, qp, 2e-6, drive, qp.z_eq(), {5, 17});
    const auto b = generate_record({2.4, 0.0}, qp, 2e-6, drive, qp.z_eq(), {5, 17});
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.truth.labels, b.truth.labels);
}

TEST(DetectJumps, ConstantRecordHasNone) {
    const auto rep = detect_jumps(constant_record(-2.4, 100), 2.4);
    EXPECT_TRUE(rep.jumps.empty());
    EXPECT_DOUBLE_EQ(rep.ground_time, 2e-6);
    EXPECT_EQ(rep.excited_time, 0.0);
}

TEST(DetectJumps, StepGivesOneUpwardJumpAtTheStep) {
    Record r = constant_record(-2.4, 100);
    for (int k = 40; k < 100; ++k) r.samples[k] = 2.4;
    const auto rep = detect_jumps(r, 2.4);
    ASSERT_EQ(rep.jumps.size(), 1u);
    EXPECT_EQ(rep.jumps[0].direction, 1);
    EXPECT_DOUBLE_EQ(rep.jumps[0].time, 40 * 20e-9);
    EXPECT_DOUBLE_EQ(rep.excited_time, 60 * 20e-9);
    EXPECT_EQ(rep.segments.size(), 2u);
}

TEST(DetectJumps, SubThresholdExcursionIgnored) {
    Record r = constant_record(-2.4, 50);
    r.samples[20] = -2.4 + 3.9;
    EXPECT_TRUE(detect_jumps(r, 2.4).jumps.empty());
    r.samples[20] = -2.4 + 4.0;
    EXPECT_EQ(detect_jumps(r, 2.4).jumps.size(), 2u);
}

TEST(DetectJumps, InitialStateIsNearestCenter) {
    const auto rep = detect_jumps(constant_record(0.5, 10), 2.4);
    EXPECT_EQ(rep.segments.front().label, 1);
}

TEST(DetectJumps, RejectsCoincidentCentersAndBadThreshold) {
    EXPECT_THROW(detect_jumps(constant_record(0.0, 10), 0.0), InvalidParameter);
    EXPECT_THROW(detect_jumps(constant_record(0.0, 10), 2.4, 0.0), InvalidParameter);
}

// Jump-free records: every trigger is a noise upcrossing of the 4 sigma level.
// The per-sample probability for unit Gaussian noise with lag-one correlation
// rho = 12 / 13 (binomial n = 12) is the integral of phi(x) Phi((u - rho x) /
// sqrt(1 - rho^2)) over x > u.
TEST(DetectJumps, FalseAlarmRateMatchesGaussianTail) {
    QubitParams qp;
    qp.p_eq = 0.0;
    qp.t1 = std::numeric_limits<double>::infinity();
    qp.t2 = std::numeric_limits<double>::infinity();
    const DriveParams drive;
    long false_ups = 0, samples = 0;
    for (std::uint64_t k = 0; k < 5000; ++k) {
        const auto rec = generate_record({2.4, 0.0}, qp, 8e-6, drive, -1.0, {4, k});
        const auto f = trim_edges(binomial_filter(rec, drive.t_m, 1.0), 6);
        const auto rep = detect_jumps(f, 2.4, 4.0);
        false_ups += rep.count(1);
        samples += static_cast<long>(f.samples.size());
    }
    const double rho = 12.0 / 13.0, u = 4.0, h = 1e-4;
    double p = 0.0;
    for (double x = u; x < u + 10; x += h)
        p += h * normal_pdf(x + h / 2) * (1.0 - normal_sf((u - rho * (x + h / 2)) / std::sqrt(1 - rho * rho)));
    const double rate = static_cast<double>(false_ups) / static_cast<double>(samples);
    EXPECT_LT(rate, 1e-4);
    EXPECT_GT(rate, p / 3);
    EXPECT_LT(rate, p * 3);
}

TEST(EstimateT1Counting, SingleEventArithmetic) {
    JumpReport r;
    r.jumps = {{2e-6, -1}};
    r.excited_time = 2e-6;
    r.ground_time = 6e-6;
    r.duration = 8e-6;
    const auto est = estimate_t1_counting(std::span<const JumpReport>(&r, 1));
    EXPECT_DOUBLE_EQ(est.t1_bound, 2e-6);
    EXPECT_DOUBLE_EQ(est.p_eq, 0.25);
}

TEST(EstimateT1Counting, SignalsWithoutDownwardJumps) {
    JumpReport r;
    r.duration = 8e-6;
    r.ground_time = 8e-6;
    EXPECT_THROW(estimate_t1_counting(std::span<const JumpReport>(&r, 1)), InsufficientStatistics);
    EXPECT_THROW(estimate_t1_counting({}), InvalidParameter);
}

TEST(EstimateT1Fit, RecoversRelaxationTime) {
    const QubitParams qp;
    const DriveParams drive;
    std::vector<Record> recs;
    for (std::uint64_t k = 0; k < 3000; ++k)
        recs.push_back(generate_record({2.4, 0.0}, qp, 8e-6, drive, 1.0, {6, k}));
    const auto fit = estimate_t1_fit(recs, drive.t_m);
    EXPECT_NEAR(fit.parameters(1), 2.8e-6, 0.28e-6);
}

TEST(EstimateT1Fit, RejectsMismatchedRecords) {
    std::vector<Record> recs{constant_record(1.0, 20), constant_record(1.0, 21)};
    EXPECT_THROW(estimate_t1_fit(recs, 240e-9), InvalidParameter);
    std::vector<Record> flat{constant_record(1.0, 40), constant_record(1.0, 40)};
    EXPECT_THROW(estimate_t1_fit(flat, 240e-9), DegenerateFit);
}

}  // namespace
}  // namespace qnd
