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

#pragma once

#include <Eigen/Dense>
#include <span>

namespace qnd {

/// Result of a least-squares fit. Parameter order is documented per fit.
struct FitResult {
    Eigen::VectorXd parameters;
    Eigen::VectorXd standard_errors;
    double residual_norm = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Weighted least squares y = slope * x + intercept. Parameters (slope, intercept).
///
/// Standard errors treat the weights as inverse variances up to a common
/// factor, which is estimated from the weighted residuals.
FitResult weighted_linear_fit(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y,
                              const Eigen::Ref<const Eigen::VectorXd>& weight);

/// y = A exp(-t / T) + B. Parameters (A, T, B).
///
/// Starts from a log-linear guess (falling back to T = span / 2) and refines
/// with damped Gauss-Newton; at most 200 iterations, relative tolerance 1e-10.
FitResult exponential_fit(const Eigen::Ref<const Eigen::VectorXd>& t,
                          const Eigen::Ref<const Eigen::VectorXd>& y);

/// Two-component Gaussian mixture, components ordered by mean.
struct GaussianMixture {
    Eigen::Vector2d weight{0.5, 0.5};
    Eigen::Vector2d mean{-1.0, 1.0};
    Eigen::Vector2d sigma{1.0, 1.0};
    int iterations = 0;
    bool converged = false;
};

/// Expectation-maximization on raw samples.
GaussianMixture fit_gaussian_mixture(std::span<const double> samples, int max_iterations = 500,
                                     double tolerance = 1e-10);

}  // namespace qnd
