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

#include "qnd/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "qnd/errors.hpp"
#include "qnd/parallel.hpp"

namespace qnd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kBlock = 1u << 15;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Everything about a protocol that does not change from trial to trial.
class TrialEngine {
   public:
    explicit TrialEngine(const ProtocolParams& p)
        : p_(p),
          kernel_(p.qubit, p.drive.dt),
          split_(split_from_observed(p.weak, p.eta)),
          window_(p.drive.samples_per_window()) {
        const double pre = p.qubit.tau * p.tau_pre_fraction;
        const double post = p.qubit.tau - pre;
        pre_t1_ = std::exp(-pre / p.qubit.t1);
        pre_t2_ = std::exp(-pre / p.qubit.t2);
        post_t1_ = std::exp(-post / p.qubit.t1);
        post_t2_ = std::exp(-post / p.qubit.t2);
        to_z_[static_cast<int>(Axis::X)] =
            Eigen::AngleAxisd(-std::numbers::pi / 2, Eigen::Vector3d::UnitY()).toRotationMatrix();
        to_z_[static_cast<int>(Axis::Y)] =
            Eigen::AngleAxisd(std::numbers::pi / 2, Eigen::Vector3d::UnitX()).toRotationMatrix();
        to_z_[static_cast<int>(Axis::Z)].setIdentity();
        to_y_ = to_z_[static_cast<int>(Axis::Y)];
    }

    TrialResult run(StreamRng& rng, std::uint64_t index) const {
        const auto& strong = p_.strong;
        const double z_eq = p_.qubit.z_eq();
        TrialResult t;

        // Preparation readout on a thermal qubit.
        const int thermal = sample_label(z_eq, rng);
        const auto prep = sample_window(kernel_, thermal, window_, rng);
        t.prep_outcome = {strong.s * prep.mean_label + rng.normal(), strong.qbar + rng.normal()};

        // R_x(pi/2) sends the heralded ground state to +y.
        Bloch state = to_y_ * Bloch(0.0, 0.0, prep.final_label);
        state = relax(state, pre_t1_, pre_t2_, z_eq);

        const auto weak = measure_weak(state, split_, rng);
        t.weak_outcome = weak.observed;
        state = relax(weak.state, post_t1_, post_t2_, z_eq);

        t.tomo_axis = p_.axis_cycle[index % 3];
        const double z = (to_z_[static_cast<int>(t.tomo_axis)] * state).z();
        const auto tomo = sample_window(kernel_, sample_label(z, rng), window_, rng);
        t.tomo_outcome = {strong.s * tomo.mean_label + rng.normal(), strong.qbar + rng.normal()};
        t.tomo_eigenvalue = t.tomo_outcome.i >= 0.0 ? 1 : -1;
        return t;
    }

   private:
    static Bloch relax(const Bloch& b, double f1, double f2, double z_eq) {
        return {b.x() * f2, b.y() * f2, z_eq + (b.z() - z_eq) * f1};
    }

    const ProtocolParams& p_;
    TelegraphKernel kernel_;
    ChannelSplit split_;
    long window_;
    double pre_t1_, pre_t2_, post_t1_, post_t2_;
    std::array<Eigen::Matrix3d, 3> to_z_;
    Eigen::Matrix3d to_y_;
};

}  // namespace

void ProtocolParams::validate() const {
    weak.validate();
    strong.validate();
    if (strong.s < 2.0) throw InvalidParameter("strong readout strength must be at least 2 (near-projective preparation)");
    qubit.validate();
    drive.validate();
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidParameter("amp.eta must be in (0, 1]");
    if (!(tau_pre_fraction >= 0.0 && tau_pre_fraction <= 1.0))
        throw InvalidParameter("protocol.tau_pre_fraction must be in [0, 1]");
    if (drive.dt >= qubit.t1 / 10.0) throw InvalidParameter("drive.dt must be below qubit.t1 / 10");
    std::array<int, 3> seen{};
    for (Axis a : axis_cycle) ++seen[static_cast<int>(a)];
    if (seen != std::array<int, 3>{1, 1, 1})
        throw InvalidParameter("tomography axis cycle must contain X, Y and Z exactly once");
}

TrialResult simulate_trial(const ProtocolParams& params, SeedPlan seeds, std::uint64_t index) {
    params.validate();
    const TrialEngine engine(params);
    StreamRng rng(seeds.master_seed, seeds.stream_id + index);
    return engine.run(rng, index);
}

std::vector<TrialResult> run_protocol(const ProtocolParams& params, std::uint64_t n_trials,
                                      SeedPlan seeds, unsigned threads) {
    params.validate();
    const TrialEngine engine(params);
    std::vector<TrialResult> out(n_trials);
    parallel_for(n_trials, threads, [&](std::uint64_t k) {
        StreamRng rng(seeds.master_seed, seeds.stream_id + k);
        out[k] = engine.run(rng, k);
    });
    return out;
}

bool passes_post_selection(const TrialResult& trial, double threshold) {
    return trial.prep_outcome.i < -threshold && std::abs(trial.tomo_outcome.i) > threshold;
}

PostSelection post_select(std::span<const TrialResult> trials, double threshold) {
    if (!(threshold >= 0.0)) throw InvalidParameter("post-selection threshold must be non-negative");
    PostSelection sel;
    for (const auto& t : trials)
        if (passes_post_selection(t, threshold)) sel.retained.push_back(t);
    sel.fraction = trials.empty() ? 0.0 : static_cast<double>(sel.retained.size()) / trials.size();
    sel.insufficient = sel.fraction < 0.01;
    return sel;
}

int MapGrid::index(double v) const {
    const double k = std::floor((v - lo) / width());
    if (!(k >= 0.0)) return 0;
    if (k >= bins - 1) return bins - 1;
    return static_cast<int>(k);
}

ConditionalMap::ConditionalMap(MapGrid grid) : grid_(grid) {
    if (grid.bins < 1 || !(grid.hi > grid.lo)) throw InvalidParameter("map grid must have positive size");
    counts_ = Counts::Zero(grid.bins, grid.bins);
    for (auto& c : axis_counts_) c = Counts::Zero(grid.bins, grid.bins);
    for (auto& s : axis_sums_) s = Counts::Zero(grid.bins, grid.bins);
}

void ConditionalMap::add(const Outcome& weak, Axis axis, int eigenvalue) {
    const int r = grid_.index(weak.i);
    const int c = grid_.index(weak.q);
    const int a = static_cast<int>(axis);
    ++counts_(r, c);
    ++axis_counts_[a](r, c);
    axis_sums_[a](r, c) += eigenvalue;
}

void ConditionalMap::merge(const ConditionalMap& other) {
    if (other.grid_.bins != grid_.bins || other.grid_.lo != grid_.lo || other.grid_.hi != grid_.hi)
        throw InvalidParameter("cannot merge maps with different grids");
    counts_ += other.counts_;
    for (int a = 0; a < 3; ++a) {
        axis_counts_[a] += other.axis_counts_[a];
        axis_sums_[a] += other.axis_sums_[a];
    }
}

Eigen::ArrayXXd ConditionalMap::means(Axis a) const {
    const auto& n = axis_counts(a);
    const auto& s = axis_sums(a);
    return (n > 0).select(s.cast<double>() / n.cast<double>().max(1.0), kNaN);
}

double ConditionalMap::overall_mean(Axis a) const {
    const auto n = axis_counts(a).sum();
    return n > 0 ? static_cast<double>(axis_sums(a).sum()) / static_cast<double>(n) : kNaN;
}

double ConditionalMap::overall_standard_error(Axis a) const {
    const auto n = axis_counts(a).sum();
    if (n < 2) return kNaN;
    const double m = overall_mean(a);
    return std::sqrt(std::max(0.0, 1.0 - m * m) / static_cast<double>(n - 1));
}

ConditionalMap bin_conditional(std::span<const TrialResult> trials, MapGrid grid) {
    ConditionalMap map(grid);
    for (const auto& t : trials) map.add(t.weak_outcome, t.tomo_axis, t.tomo_eigenvalue);
    return map;
}

ProtocolSummary accumulate_protocol(const ProtocolParams& params, std::uint64_t n_trials,
                                    SeedPlan seeds, double threshold, MapGrid grid,
                                    unsigned threads) {
    params.validate();
    const TrialEngine engine(params);
    return block_reduce(
        n_trials, kBlock, threads, [&] { return ProtocolSummary{ConditionalMap(grid)}; },
        [&](ProtocolSummary& acc, std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t k = begin; k < end; ++k) {
                StreamRng rng(seeds.master_seed, seeds.stream_id + k);
                const auto t = engine.run(rng, k);
                ++acc.trials;
                if (!passes_post_selection(t, threshold)) continue;
                ++acc.retained;
                acc.map.add(t.weak_outcome, t.tomo_axis, t.tomo_eigenvalue);
            }
        },
        [](ProtocolSummary& total, ProtocolSummary&& block) {
            total.map.merge(block.map);
            total.trials += block.trials;
            total.retained += block.retained;
        });
}

GradientEstimate gradient_at_origin(const ConditionalMap& map, Axis axis, Coordinate along,
                                    double window, std::int64_t min_counts) {
    const auto& grid = map.grid();
    const auto& n = map.axis_counts(axis);
    const auto& sums = map.axis_sums(axis);

    std::vector<double> xs, ys, ws;
    std::vector<std::int64_t> sum_b;
    for (int r = 0; r < grid.bins; ++r) {
        const double ci = grid.center(r);
        if (std::abs(ci) > window) continue;
        for (int c = 0; c < grid.bins; ++c) {
            const double cq = grid.center(c);
            if (std::abs(cq) > window || n(r, c) == 0) continue;
            xs.push_back(along == Coordinate::I ? ci : cq);
            ws.push_back(static_cast<double>(n(r, c)));
            ys.push_back(static_cast<double>(sums(r, c)) / static_cast<double>(n(r, c)));
            sum_b.push_back(sums(r, c));
        }
    }
    const double total = std::accumulate(ws.begin(), ws.end(), 0.0);
    if (xs.empty() || total < static_cast<double>(min_counts))
        throw InsufficientStatistics("gradient_at_origin: fewer than " + std::to_string(min_counts) +
                                     " counts in the fit window");

    const auto m = static_cast<Eigen::Index>(xs.size());
    const Eigen::Map<const Eigen::VectorXd> x(xs.data(), m), y(ys.data(), m), w(ws.data(), m);
    const auto fit = weighted_linear_fit(x, y, w);

    GradientEstimate g;
    g.slope = fit.parameters(0);
    g.intercept = fit.parameters(1);
    g.counts = static_cast<std::int64_t>(total);

    // Each trial is a +-1 observation at its bin center, so the residual sum
    // of squares follows from per-bin counts and sums alone.
    double rss = 0.0;
    const double x_mean = w.dot(x) / total;
    double sxx = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        const double f = g.slope * x(k) + g.intercept;
        rss += w(k) - 2.0 * f * static_cast<double>(sum_b[static_cast<std::size_t>(k)]) + w(k) * f * f;
        sxx += w(k) * (x(k) - x_mean) * (x(k) - x_mean);
    }
    g.standard_error = total > 2.0 ? std::sqrt(std::max(rss, 0.0) / (total - 2.0) / sxx) : kNaN;
    return g;
}

double theory_slope_z(double s, const QubitParams& qp) { return s * std::exp(-qp.tau / qp.t1); }

double theory_slope_x(double s, double qbar, double eta, const QubitParams& qp) {
    const double lost = (1.0 - eta) / eta;
    return s * std::cos(qbar * s * lost) * std::exp(-s * s * lost) * std::exp(-qp.tau / qp.t2);
}

double theory_y(double s, double qbar, double eta, const QubitParams& qp) {
    return std::exp(-s * s / eta) * std::cos(s * qbar / eta) * std::exp(-qp.tau / qp.t2);
}

void Histogram::add(double v) {
    const double k = std::floor((v - lo) / width());
    const auto last = static_cast<double>(counts.size() - 1);
    ++counts[static_cast<std::size_t>(std::clamp(std::isnan(k) ? 0.0 : k, 0.0, last))];
}

std::int64_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

double mixture_fidelity(const GaussianMixture& mix) {
    return 1.0 - normal_cdf(mix.mean(0) / mix.sigma(0)) - normal_cdf(-mix.mean(1) / mix.sigma(1));
}

StrongReadout strong_histograms(double theta, std::uint64_t n_trials, const StrongReadoutParams& params,
                                SeedPlan seeds, unsigned threads) {
    if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi))
        throw InvalidParameter("theta must be in [0, 2 pi)");
    params.qubit.validate();
    params.drive.validate();
    if (!(params.s > 0.0)) throw InvalidParameter("strong readout strength must be positive");
    if (params.bins < 1 || !(params.range > 0.0)) throw InvalidParameter("histogram bins and range must be positive");
    if (params.drive.dt >= params.qubit.t1 / 10.0) throw InvalidParameter("drive.dt must be below qubit.t1 / 10");

    const TelegraphKernel kernel(params.qubit, params.drive.dt);
    const long window = params.drive.samples_per_window();
    const double z_eq = params.qubit.z_eq();
    const double c = std::cos(theta);

    StrongReadout out;
    out.theta = theta;
    out.samples.resize(n_trials);
    std::vector<std::int8_t> truth(n_trials);
    parallel_for(n_trials, threads, [&](std::uint64_t k) {
        StreamRng rng(seeds.master_seed, seeds.stream_id + k);
        const int thermal = sample_label(z_eq, rng);
        const int label = sample_label(thermal * c, rng);
        const auto w = sample_window(kernel, label, window, rng);
        out.samples[k] = params.s * w.mean_label + rng.normal();
        truth[k] = static_cast<std::int8_t>(label);
    });

    out.histogram = {-params.range, params.range, std::vector<std::int64_t>(static_cast<std::size_t>(params.bins))};
    std::uint64_t n_g = 0, n_e = 0, wrong_g = 0, wrong_e = 0, positive = 0;
    for (std::uint64_t k = 0; k < n_trials; ++k) {
        const double i = out.samples[k];
        out.histogram.add(i);
        positive += i > 0.0;
        if (truth[k] < 0) {
            ++n_g;
            wrong_g += i > 0.0;
        } else {
            ++n_e;
            wrong_e += i < 0.0;
        }
    }
    out.p_e_given_g = n_g ? static_cast<double>(wrong_g) / n_g : kNaN;
    out.p_g_given_e = n_e ? static_cast<double>(wrong_e) / n_e : kNaN;

    // Both modes need support for the two-component fit to be identifiable.
    const double frac_pos = n_trials ? static_cast<double>(positive) / n_trials : 0.0;
    out.separation = kNaN;
    out.fidelity = kNaN;
    if (n_trials >= 100 && frac_pos > 0.01 && frac_pos < 0.99) {
        out.mixture = fit_gaussian_mixture(out.samples);
        out.mixture_valid = out.mixture.converged;
        out.separation = out.mixture.mean(1) - out.mixture.mean(0);
        out.fidelity = mixture_fidelity(out.mixture);
    }
    return out;
}

}  // namespace qnd
