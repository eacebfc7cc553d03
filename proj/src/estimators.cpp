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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qnd/errors.hpp"

namespace qnd {

FitResult weighted_linear_fit(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y,
                              const Eigen::Ref<const Eigen::VectorXd>& weight) {
    if (x.size() != y.size() || x.size() != weight.size())
        throw InvalidParameter("weighted_linear_fit: x, y and weight sizes differ");
    if ((weight.array() < 0.0).any()) throw InvalidParameter("weighted_linear_fit: negative weight");

    const auto used = (weight.array() > 0.0).count();
    const double total = weight.sum();
    if (used < 2 || !(total > 0.0)) throw DegenerateFit("weighted_linear_fit: fewer than two weighted points");

    const double x_mean = weight.dot(x) / total;
    const double y_mean = weight.dot(y) / total;
    const Eigen::ArrayXd dx = x.array() - x_mean;
    const Eigen::ArrayXd dy = y.array() - y_mean;
    const double sxx = (weight.array() * dx * dx).sum();
    const double sxy = (weight.array() * dx * dy).sum();
    const double scale = (weight.array() * x.array().square()).sum();
    if (!(sxx > 1e-14 * scale) || sxx == 0.0) throw DegenerateFit("weighted_linear_fit: x values coincide");

    const double slope = sxy / sxx;
    const double intercept = y_mean - slope * x_mean;
    const Eigen::ArrayXd r = y.array() - (slope * x.array() + intercept);
    const double rss = (weight.array() * r * r).sum();

    FitResult fit;
    fit.parameters = Eigen::Vector2d(slope, intercept);
    const double var = used > 2 ? rss / static_cast<double>(used - 2) : 0.0;
    fit.standard_errors =
        Eigen::Vector2d(std::sqrt(var / sxx), std::sqrt(var * (1.0 / total + x_mean * x_mean / sxx)));
    fit.residual_norm = std::sqrt(rss);
    fit.converged = true;
    return fit;
}

namespace {

// Linear least squares for (A, B) at fixed decay time.
Eigen::Vector2d amplitude_offset(const Eigen::ArrayXd& u, const Eigen::ArrayXd& y, double time) {
    Eigen::MatrixXd design(u.size(), 2);
    design.col(0) = (-u / time).exp().matrix();
    design.col(1).setOnes();
    return design.colPivHouseholderQr().solve(y.matrix());
}

double initial_decay_time(const Eigen::ArrayXd& u, const Eigen::ArrayXd& y) {
    // Means of three equal blocks: for an exponential plus offset, successive
    // differences shrink by exp(-spacing / T).
    const Eigen::Index n = u.size();
    const Eigen::Index m = n / 3;
    const double span = u(n - 1) - u(0);
    if (m >= 1) {
        const double y1 = y.segment(0, m).mean();
        const double y2 = y.segment(m, m).mean();
        const double y3 = y.segment(2 * m, m).mean();
        const double u1 = u.segment(0, m).mean();
        const double u2 = u.segment(m, m).mean();
        const double ratio = (y2 - y3) / (y1 - y2);
        if (std::isfinite(ratio) && ratio > 0.0 && ratio < 1.0) return -(u2 - u1) / std::log(ratio);
    }
    return span / 2.0;
}

}  // namespace

FitResult exponential_fit(const Eigen::Ref<const Eigen::VectorXd>& t,
                          const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (t.size() != y.size()) throw InvalidParameter("exponential_fit: t and y sizes differ");
    if (t.size() < 4) throw InvalidParameter("exponential_fit: need at least 4 points");
    const Eigen::Index n = t.size();

    const double y_scale = std::max(y.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    if (y.maxCoeff() - y.minCoeff() <= 1e-12 * y_scale)
        throw DegenerateFit("exponential_fit: series is constant, amplitude and decay time are not identifiable");

    // Work in units of the time span so all three parameters are O(1).
    const double t_scale = std::max(std::abs(t(n - 1)), std::abs(t(0)));
    if (!(t_scale > 0.0)) throw DegenerateFit("exponential_fit: time axis has zero span");
    const Eigen::ArrayXd u = t.array() / t_scale;
    const Eigen::ArrayXd yy = y.array();

    double time = initial_decay_time(u, yy);
    Eigen::Vector2d ab = amplitude_offset(u, yy, time);
    Eigen::Vector3d p(ab(0), time, ab(1));

    auto residuals = [&](const Eigen::Vector3d& q) -> Eigen::ArrayXd {
        return yy - (q(0) * (-u / q(1)).exp() + q(2));
    };

    Eigen::ArrayXd r = residuals(p);
    double cost = r.square().sum();
    double lambda = 1e-3;
    constexpr int kMaxIterations = 200;
    constexpr double kTolerance = 1e-10;
    int iteration = 0;
    bool converged = false;
    Eigen::MatrixXd jac(n, 3);

    for (; iteration < kMaxIterations && !converged; ++iteration) {
        const Eigen::ArrayXd e = (-u / p(1)).exp();
        jac.col(0) = e.matrix();
        jac.col(1) = (p(0) * e * u / (p(1) * p(1))).matrix();
        jac.col(2).setOnes();
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d jtr = jac.transpose() * r.matrix();

        bool accepted = false;
        while (!accepted && lambda < 1e12) {
            Eigen::Matrix3d damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
            const Eigen::Vector3d step = damped.ldlt().solve(jtr);
            const Eigen::Vector3d trial = p + step;
            if (!(trial(1) > 0.0) || !trial.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            const Eigen::ArrayXd r_trial = residuals(trial);
            const double cost_trial = r_trial.square().sum();
            if (cost_trial <= cost) {
                const double rel_step = step.norm() / (p.norm() + kTolerance);
                const double rel_cost = (cost - cost_trial) / std::max(cost, 1e-300);
                p = trial;
                r = r_trial;
                cost = cost_trial;
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                if (rel_step < kTolerance || rel_cost < kTolerance * kTolerance ||
                    cost <= 1e-30 * y_scale * y_scale * static_cast<double>(n))
                    converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) {
            // No downhill step exists at any damping: a (numerical) minimum.
            converged = true;
        }
    }

    const double residual_norm = std::sqrt(cost);
    if (!converged)
        throw FitDidNotConverge("exponential_fit: no convergence within 200 iterations", residual_norm,
                                iteration);
    if (std::abs(p(0)) <= 1e-12 * y_scale || !(p(1) > 0.0) || !p.allFinite())
        throw DegenerateFit("exponential_fit: fitted amplitude vanishes");

    const Eigen::ArrayXd e = (-u / p(1)).exp();
    jac.col(0) = e.matrix();
    jac.col(1) = (p(0) * e * u / (p(1) * p(1))).matrix();
    jac.col(2).setOnes();
    const Eigen::Matrix3d cov = (jac.transpose() * jac).inverse();
    const double var = n > 3 ? cost / static_cast<double>(n - 3) : 0.0;
    Eigen::Vector3d se = (var * cov.diagonal()).cwiseMax(0.0).cwiseSqrt();
    se(1) *= t_scale;

    FitResult fit;
    fit.parameters = Eigen::Vector3d(p(0), p(1) * t_scale, p(2));
    fit.standard_errors = se;
    fit.residual_norm = residual_norm;
    fit.converged = true;
    fit.iterations = iteration;
    return fit;
}

GaussianMixture fit_gaussian_mixture(std::span<const double> samples, int max_iterations,
                                     double tolerance) {
    GaussianMixture mix;
    const auto n = static_cast<Eigen::Index>(samples.size());
    if (n < 4) throw InsufficientStatistics("fit_gaussian_mixture: need at least 4 samples");
    const Eigen::Map<const Eigen::ArrayXd> x(samples.data(), n);

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted[static_cast<std::size_t>(n / 4)];
    const double hi = sorted[static_cast<std::size_t>(3 * n / 4)];
    const double spread = std::sqrt((x - x.mean()).square().mean());
    mix.mean = {lo, hi};
    mix.sigma = Eigen::Vector2d::Constant(std::max(spread / 2.0, 1e-3));

    const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi);
    double previous = -std::numeric_limits<double>::infinity();
    Eigen::ArrayXd r0(n), r1(n);
    for (int it = 0; it < max_iterations; ++it) {
        // E step in log space.
        const Eigen::ArrayXd l0 = std::log(mix.weight(0)) - std::log(mix.sigma(0)) - log_norm -
                                  0.5 * ((x - mix.mean(0)) / mix.sigma(0)).square();
        const Eigen::ArrayXd l1 = std::log(mix.weight(1)) - std::log(mix.sigma(1)) - log_norm -
                                  0.5 * ((x - mix.mean(1)) / mix.sigma(1)).square();
        const Eigen::ArrayXd top = l0.max(l1);
        const Eigen::ArrayXd lse = top + ((l0 - top).exp() + (l1 - top).exp()).log();
        r0 = (l0 - lse).exp();
        r1 = (l1 - lse).exp();
        const double loglik = lse.sum();

        // M step.
        const double n0 = r0.sum();
        const double n1 = r1.sum();
        if (n0 <= 0.0 || n1 <= 0.0) break;
        mix.weight = {n0 / static_cast<double>(n), n1 / static_cast<double>(n)};
        mix.mean = {(r0 * x).sum() / n0, (r1 * x).sum() / n1};
        mix.sigma = {std::max(std::sqrt((r0 * (x - mix.mean(0)).square()).sum() / n0), 1e-6),
                     std::max(std::sqrt((r1 * (x - mix.mean(1)).square()).sum() / n1), 1e-6)};
        mix.iterations = it + 1;
        if (std::abs(loglik - previous) <= tolerance * std::abs(loglik)) {
            mix.converged = true;
            break;
        }
        previous = loglik;
    }
    if (mix.mean(0) > mix.mean(1)) {
        std::swap(mix.mean(0), mix.mean(1));
        std::swap(mix.sigma(0), mix.sigma(1));
        std::swap(mix.weight(0), mix.weight(1));
    }
    return mix;
}

}  // namespace qnd
