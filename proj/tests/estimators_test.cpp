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

#include "qnd/estimators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qnd/errors.hpp"
#include "qnd/random.hpp"

namespace qnd {
namespace {

using Eigen::VectorXd;

TEST(WeightedLinearFit, TwoPoints) {
    const auto fit = weighted_linear_fit(VectorXd{{0.0, 1.0}}, VectorXd{{0.0, 1.0}}, VectorXd{{1.0, 1.0}});
    EXPECT_DOUBLE_EQ(fit.parameters(0), 1.0);
    EXPECT_DOUBLE_EQ(fit.parameters(1), 0.0);
    EXPECT_TRUE(fit.converged);
}

TEST(WeightedLinearFit, ExactLine) {
    const auto fit =
        weighted_linear_fit(VectorXd{{-1.0, 0.0, 1.0}}, VectorXd{{-0.3, 0.0, 0.3}}, VectorXd{{1.0, 1.0, 1.0}});
    EXPECT_NEAR(fit.parameters(0), 0.3, 1e-15);
    EXPECT_NEAR(fit.standard_errors(0), 0.0, 1e-15);
}

// The slope of tanh(0.3 x) regressed over the map bin centers within |x| <= 1
// (201 bins on [-6, 6]) with uniform weights, against the series oracle
// 0.3 - 0.009 <x^4> / <x^2> + (2/15) 0.3^5 <x^6> / <x^2> - (17/315) 0.3^7 <x^8> / <x^2>.
TEST(WeightedLinearFit, SmoothNonlinearityOnMapGrid) {
    std::vector<double> xs;
    for (int k = 0; k < 201; ++k) {
        const double c = -6.0 + (k + 0.5) * 12.0 / 201;
        if (std::abs(c) <= 1.0) xs.push_back(c);
    }
    const auto n = static_cast<Eigen::Index>(xs.size());
    const VectorXd x = Eigen::Map<VectorXd>(xs.data(), n);
    const VectorXd y = (0.3 * x.array()).tanh().matrix();
    const auto fit = weighted_linear_fit(x, y, VectorXd::Ones(n));

    const double m2 = x.array().pow(2).mean(), m4 = x.array().pow(4).mean(), m6 = x.array().pow(6).mean();
    const double m8 = x.array().pow(8).mean();
    const double series = 0.3 - 0.009 * m4 / m2 + 2.0 / 15 * std::pow(0.3, 5) * m6 / m2 -
                          17.0 / 315 * std::pow(0.3, 7) * m8 / m2;
    EXPECT_EQ(n, 33);
    EXPECT_NEAR(fit.parameters(0), series, 2e-6);
    EXPECT_NEAR(fit.parameters(0), 0.29490, 5e-6);
}

TEST(WeightedLinearFit, ScaleEquivariant) {
    StreamRng rng(1, 0);
    VectorXd x(50), y(50), w(50);
    for (int k = 0; k < 50; ++k) {
        x(k) = rng.normal();
        y(k) = 0.7 * x(k) + 0.2 * rng.normal();
        w(k) = rng.uniform();
    }
    for (double c : {2.0, 0.25, -8.0}) {
        const auto a = weighted_linear_fit(x, y, w);
        const auto b = weighted_linear_fit(x, (c * y).eval(), w);
        EXPECT_EQ(b.parameters(0), c * a.parameters(0));
    }
    const auto a = weighted_linear_fit(x, y, w);
    const auto b = weighted_linear_fit(x, (3.0 * y).eval(), w);
    EXPECT_DOUBLE_EQ(b.parameters(0), 3.0 * a.parameters(0));
    EXPECT_GE(a.standard_errors.minCoeff(), 0.0);
}

TEST(WeightedLinearFit, ZeroWeightPointsIgnored) {
    const auto fit = weighted_linear_fit(VectorXd{{0.0, 1.0, 2.0}}, VectorXd{{0.0, 1.0, 50.0}},
                                         VectorXd{{1.0, 1.0, 0.0}});
    EXPECT_DOUBLE_EQ(fit.parameters(0), 1.0);
}

TEST(WeightedLinearFit, DegenerateInputsSignal) {
    EXPECT_THROW(weighted_linear_fit(VectorXd{{1.0}}, VectorXd{{1.0}}, VectorXd{{1.0}}), DegenerateFit);
    EXPECT_THROW(weighted_linear_fit(VectorXd{{2.0, 2.0}}, VectorXd{{0.0, 1.0}}, VectorXd{{1.0, 1.0}}),
                 DegenerateFit);
    EXPECT_THROW(weighted_linear_fit(VectorXd{{0.0, 1.0}}, VectorXd{{0.0, 1.0}}, VectorXd{{1.0, 0.0}}),
                 DegenerateFit);
    EXPECT_THROW(weighted_linear_fit(VectorXd{{0.0, 1.0}}, VectorXd{{0.0, 1.0}}, VectorXd{{1.0, -1.0}}),
                 InvalidParameter);
}

VectorXd time_grid(int n, double dt) { return VectorXd::LinSpaced(n, 0.0, dt * (n - 1)); }

TEST(ExponentialFit, RecoversExactDecay) {
    const VectorXd t = time_grid(400, 20e-9);
    const VectorXd y = (2.0 * (-t.array() / 2.8e-6).exp()).matrix();
    const auto fit = exponential_fit(t, y);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.parameters(1), 2.8e-6, 2.8e-6 * 1e-6);
    EXPECT_NEAR(fit.parameters(0), 2.0, 2e-6);
    EXPECT_NEAR(fit.parameters(2), 0.0, 1e-6);
    EXPECT_LT(fit.residual_norm / y.norm(), 1e-9);
}

TEST(ExponentialFit, RecoversDecayWithOffset) {
    const VectorXd t = time_grid(200, 20e-9);
    const VectorXd y = (-1.5 * (-t.array() / 0.9e-6).exp() + 0.4).matrix();
    const auto fit = exponential_fit(t, y);
    EXPECT_NEAR(fit.parameters(1), 0.9e-6, 0.9e-6 * 1e-6);
    EXPECT_NEAR(fit.parameters(0), -1.5, 1e-6);
    EXPECT_NEAR(fit.parameters(2), 0.4, 1e-6);
}

TEST(ExponentialFit, NoisyDecayWithinTenPercent) {
    StreamRng rng(2, 0);
    const VectorXd t = time_grid(400, 20e-9);
    VectorXd y = (1.8 * (-t.array() / 2.8e-6).exp() - 0.8).matrix();
    for (Eigen::Index k = 0; k < y.size(); ++k) y(k) += 0.02 * rng.normal();
    const auto fit = exponential_fit(t, y);
    EXPECT_NEAR(fit.parameters(1), 2.8e-6, 0.28e-6);
    EXPECT_GT(fit.standard_errors(1), 0.0);
}

TEST(ExponentialFit, ConstantSeriesIsDegenerate) {
    const VectorXd t = time_grid(50, 1.0);
    EXPECT_THROW(exponential_fit(t, VectorXd::Constant(50, 0.3)), DegenerateFit);
}

TEST(ExponentialFit, TooFewPoints) {
    EXPECT_THROW(exponential_fit(time_grid(3, 1.0), VectorXd{{3.0, 2.0, 1.5}}), InvalidParameter);
}

TEST(GaussianMixture, RecoversComponents) {
    StreamRng rng(3, 0);
    std::vector<double> xs;
    for (int k = 0; k < 200000; ++k) {
        const bool first = rng.uniform() < 0.3;
        xs.push_back(first ? 2.0 + 0.8 * rng.normal() : -2.5 + 1.1 * rng.normal());
    }
    const auto mix = fit_gaussian_mixture(xs);
    EXPECT_TRUE(mix.converged);
    EXPECT_NEAR(mix.weight(0), 0.7, 0.01);
    EXPECT_NEAR(mix.mean(0), -2.5, 0.02);
    EXPECT_NEAR(mix.mean(1), 2.0, 0.02);
    EXPECT_NEAR(mix.sigma(0), 1.1, 0.02);
    EXPECT_NEAR(mix.sigma(1), 0.8, 0.02);
}

}  // namespace
}  // namespace qnd
