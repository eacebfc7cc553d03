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
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qnd/bloch.hpp"
#include "qnd/estimators.hpp"
#include "qnd/params.hpp"
#include "qnd/random.hpp"
#include "qnd/sampler.hpp"

namespace qnd {

/// One run of the prepare / weak-measure / tomograph sequence.
struct TrialResult {
    Outcome prep_outcome;
    Outcome weak_outcome;
    Axis tomo_axis = Axis::Z;
    Outcome tomo_outcome;
    int tomo_eigenvalue = 1;  ///< sign of tomo_outcome.i
};

struct ProtocolParams {
    StrengthParams weak;    ///< observed-channel strength of the variable measurement
    StrengthParams strong;  ///< preparation and tomography readout
    QubitParams qubit;
    double eta = 1.0;
    DriveParams drive;  ///< t_m and dt of the strong readout windows
    /// Fraction of qubit.tau spent between preparation and the weak
    /// measurement; the rest separates the weak measurement from tomography.
    double tau_pre_fraction = 0.5;
    /// Tomography axis of trial k is axis_cycle[k % 3].
    std::array<Axis, 3> axis_cycle{Axis::X, Axis::Y, Axis::Z};

    void validate() const;
};

/// Trial number `index` of a run; its random stream is (seeds.master_seed,
/// seeds.stream_id + index).
TrialResult simulate_trial(const ProtocolParams& params, SeedPlan seeds, std::uint64_t index);

std::vector<TrialResult> run_protocol(const ProtocolParams& params, std::uint64_t n_trials,
                                      SeedPlan seeds, unsigned threads = 1);

struct PostSelection {
    std::vector<TrialResult> retained;
    double fraction = 0.0;
    bool insufficient = false;  ///< fewer than 1% of trials retained
};

/// Keeps trials heralded in the ground state (prep i < -threshold) whose
/// tomography outcome is unambiguous (|tomo i| > threshold).
bool passes_post_selection(const TrialResult& trial, double threshold);
PostSelection post_select(std::span<const TrialResult> trials, double threshold = 1.5);

/// Square binning of the scaled outcome plane.
struct MapGrid {
    int bins = 201;
    double lo = -6.0;
    double hi = 6.0;

    double width() const { return (hi - lo) / bins; }
    double center(int k) const { return lo + (k + 0.5) * width(); }
    /// Outcomes outside [lo, hi) are clamped into the edge bins.
    int index(double v) const;
};

/// Per-bin counts and tomography eigenvalue sums over the weak-outcome plane.
/// Row index follows i, column index follows q. All storage is integral, so
/// merging is exact and order-independent.
class ConditionalMap {
   public:
    using Counts = Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

    explicit ConditionalMap(MapGrid grid = {});

    void add(const Outcome& weak, Axis axis, int eigenvalue);
    void merge(const ConditionalMap& other);

    const MapGrid& grid() const { return grid_; }
    /// Outcome histogram of every added trial.
    const Counts& counts() const { return counts_; }
    const Counts& axis_counts(Axis a) const { return axis_counts_[static_cast<int>(a)]; }
    const Counts& axis_sums(Axis a) const { return axis_sums_[static_cast<int>(a)]; }
    std::int64_t total() const { return counts_.sum(); }

    /// Conditional mean eigenvalue per bin; NaN marks empty bins.
    Eigen::ArrayXXd means(Axis a) const;
    /// Count-weighted mean over all bins (the unconditioned expectation).
    double overall_mean(Axis a) const;
    double overall_standard_error(Axis a) const;

   private:
    MapGrid grid_;
    Counts counts_;
    std::array<Counts, 3> axis_counts_;
    std::array<Counts, 3> axis_sums_;
};

ConditionalMap bin_conditional(std::span<const TrialResult> trials, MapGrid grid = {});

/// Streams trials straight into a map without storing them.
struct ProtocolSummary {
    ConditionalMap map;
    std::uint64_t trials = 0;
    std::uint64_t retained = 0;

    double retention() const { return trials ? static_cast<double>(retained) / trials : 0.0; }
};

ProtocolSummary accumulate_protocol(const ProtocolParams& params, std::uint64_t n_trials,
                                    SeedPlan seeds, double threshold, MapGrid grid = {},
                                    unsigned threads = 1);

enum class Coordinate { I, Q };

struct GradientEstimate {
    double slope = 0.0;
    double standard_error = 0.0;
    double intercept = 0.0;
    std::int64_t counts = 0;
};

/// Count-weighted regression of the per-bin means of `axis` against the i or q
/// bin center, over bins with |i| <= window and |q| <= window. The standard
/// error treats each trial as a +-1 observation.
GradientEstimate gradient_at_origin(const ConditionalMap& map, Axis axis, Coordinate along,
                                    double window = 1.0, std::int64_t min_counts = 100);

/// d<Z>_c/dI at the origin with T1 decay over the dead time.
double theory_slope_z(double s, const QubitParams& qp);
/// d<X>_c/dQ at the origin including the lost-channel phase and damping.
double theory_slope_x(double s, double qbar, double eta, const QubitParams& qp);
/// Unconditioned <Y> after the measurement.
double theory_y(double s, double qbar, double eta, const QubitParams& qp);

struct Histogram {
    double lo = -6.0;
    double hi = 6.0;
    std::vector<std::int64_t> counts;

    double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double center(std::size_t k) const { return lo + (static_cast<double>(k) + 0.5) * width(); }
    void add(double v);
    std::int64_t total() const;
};

struct StrongReadoutParams {
    double s = 2.4;
    QubitParams qubit;
    DriveParams drive;
    int bins = 240;
    double range = 6.0;
};

struct StrongReadout {
    double theta = 0.0;
    Histogram histogram;
    std::vector<double> samples;
    GaussianMixture mixture;
    bool mixture_valid = false;
    /// Distance between fitted component means, in sigma units.
    double separation = 0.0;
    /// 1 - P(i > 0 | g component) - P(i < 0 | e component) of the fitted mixture.
    double fidelity = 0.0;
    /// Misassignment against the true label at the start of the window.
    double p_e_given_g = 0.0;
    double p_g_given_e = 0.0;
};

/// i after R_x(theta) on a thermal qubit, integrated over one window with
/// relaxation. The mixture is fitted when both modes are populated.
StrongReadout strong_histograms(double theta, std::uint64_t n_trials, const StrongReadoutParams& params,
                                SeedPlan seeds, unsigned threads = 1);

/// Fidelity of two Gaussian components at threshold 0.
double mixture_fidelity(const GaussianMixture& mix);

}  // namespace qnd
