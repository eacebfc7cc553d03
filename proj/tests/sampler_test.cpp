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

#include "qnd/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qnd/errors.hpp"

namespace qnd {
namespace {

TEST(SplitStrength, SharesStrengthInQuadrature) {
    const auto split = split_strength(2.0, 1.5, 0.2);
    EXPECT_NEAR(split.s_obs * split.s_obs + split.s_lost * split.s_lost, 4.0, 1e-14);
    EXPECT_NEAR(split.s_obs, 2.0 * std::sqrt(0.2), 1e-15);
    EXPECT_NEAR(split.qbar_lost / split.qbar_obs, split.s_lost / split.s_obs, 1e-14);
}

TEST(SplitStrength, UnitEfficiencyHasNoLostChannel) {
    const auto split = split_strength(1.0, 0.4, 1.0);
    EXPECT_EQ(split.s_lost, 0.0);
    EXPECT_EQ(split.s_obs, 1.0);
}

TEST(SplitStrength, RejectsEfficiencyOutsideUnitInterval) {
    EXPECT_THROW(split_strength(1.0, 0.0, 0.0), InvalidParameter);
    EXPECT_THROW(split_strength(1.0, 0.0, 1.5), InvalidParameter);
    EXPECT_THROW(split_from_observed({1.0, 0.0}, -0.1), InvalidParameter);
}

TEST(SplitFromObserved, KeepsObservedChannel) {
    const auto split = split_from_observed({0.5, 0.64}, 0.2);
    EXPECT_EQ(split.s_obs, 0.5);
    EXPECT_EQ(split.qbar_obs, 0.64);
    EXPECT_NEAR(std::hypot(split.s_obs, split.s_lost), 0.5 / std::sqrt(0.2), 1e-14);
}

TEST(SampleLabel, FrequencyFollowsZ) {
    StreamRng rng(1, 0);
    const int n = 400000;
    int excited = 0;
    for (int k = 0; k < n; ++k) excited += sample_label(0.3, rng) > 0;
    EXPECT_NEAR(static_cast<double>(excited) / n, 0.65, 5 * std::sqrt(0.65 * 0.35 / n));
    EXPECT_EQ(sample_label(1.0, rng), 1);
    EXPECT_EQ(sample_label(-1.0, rng), -1);
}

TEST(SampleOutcome, GaussianAboutPointerCenters) {
    StreamRng rng(2, 0);
    const int n = 400000;
    const StrengthParams sp{1.5, 0.7};
    double si = 0, si2 = 0, sq = 0;
    for (int k = 0; k < n; ++k) {
        const auto o = sample_outcome(-1, sp, rng);
        si += o.i;
        si2 += o.i * o.i;
        sq += o.q;
    }
    EXPECT_NEAR(si / n, -1.5, 5 / std::sqrt(n));
    EXPECT_NEAR(sq / n, 0.7, 5 / std::sqrt(n));
    EXPECT_NEAR(si2 / n - (si / n) * (si / n), 1.0, 5 * std::sqrt(2.0 / n));
}

TEST(TelegraphKernel, StationaryDistributionIsEquilibrium) {
    const QubitParams qp;
    const TelegraphKernel kernel(qp, 20e-9);
    EXPECT_NEAR(kernel.p_up() / (kernel.p_up() + kernel.p_down()), qp.p_eq, 1e-14);
    EXPECT_NEAR(kernel.p_up() + kernel.p_down(), -std::expm1(-20e-9 / qp.t1), 1e-16);
}

TEST(TelegraphKernel, IdealQubitNeverMoves) {
    const TelegraphKernel kernel(QubitParams::ideal(), 20e-9);
    EXPECT_EQ(kernel.p_up(), 0.0);
    EXPECT_EQ(kernel.p_down(), 0.0);
}

TEST(SampleTelegraph, NoExcitationChannelStaysGround) {
    QubitParams qp;
    qp.p_eq = 0.0;
    StreamRng rng(3, 0);
    const auto path = sample_telegraph(qp, -1, 8e-6, 20e-9, rng);
    EXPECT_EQ(path.labels.size(), 400u);
    EXPECT_EQ(path.mean(), -1.0);
}

TEST(SampleTelegraph, RejectsCoarseStepAndBadLabel) {
    const QubitParams qp;
    StreamRng rng(4, 0);
    EXPECT_THROW(sample_telegraph(qp, 1, 8e-6, qp.t1 / 10, rng), InvalidParameter);
    EXPECT_THROW(sample_telegraph(qp, 0, 8e-6, 20e-9, rng), InvalidParameter);
}

TEST(SampleTelegraph, ExcitedEnsembleRelaxesExponentially) {
    const QubitParams qp;
    const int n = 20000;
    std::vector<double> mean(400, 0.0);
    for (int k = 0; k < n; ++k) {
        StreamRng rng(5, static_cast<std::uint64_t>(k));
        const auto path = sample_telegraph(qp, 1, 8e-6, 20e-9, rng);
        for (std::size_t t = 0; t < path.labels.size(); ++t) mean[t] += path.labels[t];
    }
    for (std::size_t t : {0u, 100u, 250u, 399u}) {
        const double z = qp.z_eq() + (1 - qp.z_eq()) * std::exp(-static_cast<double>(t) * 20e-9 / qp.t1);
        EXPECT_NEAR(mean[t] / n, z, 5 * std::sqrt((1 - z * z) / n)) << "t=" << t;
    }
}

TEST(SampleTelegraph, ThermalFractionIsStationary) {
    const QubitParams qp;
    const int n = 100000;
    long excited = 0, total = 0;
    for (int k = 0; k < n; ++k) {
        StreamRng rng(6, static_cast<std::uint64_t>(k));
        const auto path = sample_telegraph(qp, sample_label(qp.z_eq(), rng), 8e-6, 20e-9, rng);
        for (auto l : path.labels) excited += l > 0;
        total += static_cast<long>(path.labels.size());
    }
    EXPECT_NEAR(static_cast<double>(excited) / total, 0.08, 0.002);
}

TEST(SampleWindow, IdealQubitKeepsLabel) {
    const TelegraphKernel kernel(QubitParams::ideal(), 20e-9);
    StreamRng rng(7, 0);
    const auto w = sample_window(kernel, 1, 12, rng);
    EXPECT_EQ(w.mean_label, 1.0);
    EXPECT_EQ(w.final_label, 1);
}

TEST(CavityResponse, ZeroTimeIsPassThroughAndFiniteTimeRingsUp) {
    LabelPath path{std::vector<std::int8_t>(200, 1), 20e-9};
    const auto direct = cavity_response(path, 0.0);
    for (double v : direct) EXPECT_EQ(v, 1.0);
    const auto slow = cavity_response(path, 100e-9);
    EXPECT_NEAR(slow.front(), -std::expm1(-0.2), 1e-15);
    EXPECT_NEAR(slow.back(), 1.0, 1e-12);
    for (std::size_t k = 1; k < slow.size(); ++k) EXPECT_GE(slow[k], slow[k - 1]);
}

TEST(IntegratedOutcome, MeanFollowsPathAverage) {
    LabelPath path{{1, 1, 1, -1}, 20e-9};
    StreamRng rng(8, 0);
    const int n = 200000;
    double si = 0;
    for (int k = 0; k < n; ++k) si += integrated_outcome(path, {2.0, 0.0}, rng).i;
    EXPECT_NEAR(si / n, 1.0, 5 / std::sqrt(n));
}

TEST(MeasureWeak, UnitEfficiencyUsesObservedChannelOnly) {
    const auto split = split_strength(1.2, 0.8, 1.0);
    StreamRng a(9, 0), b(9, 0);
    const auto m = measure_weak(Bloch::UnitY(), split, a);
    const int label = sample_label(0.0, b);
    const auto o = sample_outcome(label, split.observed(), b);
    EXPECT_EQ(m.label, label);
    EXPECT_EQ(m.state, update_general(Bloch::UnitY().eval(), o, split.observed(), 1.0));
}

TEST(MeasureWeak, ZIsAMartingale) {
    const auto split = split_strength(1.5, 1.0, 0.3);
    const Bloch init{0.0, std::sqrt(1 - 0.25), 0.5};
    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int k = 0; k < n; ++k) {
        StreamRng rng(10, static_cast<std::uint64_t>(k));
        const double z = measure_weak(init, split, rng).state.z();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(mean, 0.5, 4 * se);
}

TEST(MeasureWeak, PureStatesStayPure) {
    const auto split = split_strength(2.0, 1.0, 0.2);
    for (int k = 0; k < 1000; ++k) {
        StreamRng rng(11, static_cast<std::uint64_t>(k));
        EXPECT_NEAR(purity(measure_weak(Bloch::UnitY(), split, rng).state), 1.0, 1e-12);
    }
}

}  // namespace
}  // namespace qnd
