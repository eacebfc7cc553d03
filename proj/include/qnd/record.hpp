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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qnd/estimators.hpp"
#include "qnd/params.hpp"
#include "qnd/random.hpp"
#include "qnd/sampler.hpp"

namespace qnd {

/// A uniformly sampled I-quadrature time series. `truth` holds the labels the
/// record was generated from; detectors never read it.
struct Record {
    double dt = 0.0;
    std::vector<double> samples;
    LabelPath truth;
    SeedPlan seed;

    double duration() const { return static_cast<double>(samples.size()) * dt; }
};

/// Normalized binomial taps C(n, k) / 2^n, k = 0..n.
Eigen::VectorXd binomial_taps(int n);

/// Standard deviation of white unit noise after the n-th order binomial filter.
double binomial_noise_scale(int n);

/// Continuous record whose binomial-filtered (width t_m) and sigma-scaled form
/// has state centers at +-s and unit noise. The initial label is drawn from
/// `initial_z`.
Record generate_record(const StrengthParams& sp, const QubitParams& qp, double duration,
                       const DriveParams& drive, double initial_z, SeedPlan seeds,
                       double response_time = 0.0);

/// Binomial smoothing over `width` (n = width / dt, which must be even, giving
/// n + 1 taps). Edges use shrinking symmetric windows. With `noise_sigma` set,
/// the output is divided by noise_sigma times the interior noise scale, so
/// per-sample noise of that size comes out with unit standard deviation.
Record binomial_filter(const Record& r, double width, std::optional<double> noise_sigma = {});

/// Drops `count` samples from each end (the shrinking-window edge region).
Record trim_edges(const Record& r, long count);

struct Jump {
    double time = 0.0;
    int direction = 0;  ///< +1 up (g -> e), -1 down
};

struct Segment {
    int label = 0;
    double start = 0.0;
    double duration = 0.0;
};

struct JumpReport {
    std::vector<Jump> jumps;
    std::vector<Segment> segments;
    double excited_time = 0.0;
    double ground_time = 0.0;
    double duration = 0.0;

    long count(int direction) const;
};

/// Hysteretic two-state detector with centers at +-s. A jump is declared at the
/// first sample at least `threshold` away from the current center on the side
/// of the other center.
JumpReport detect_jumps(const Record& filtered, double s, double threshold = 4.0);

struct CountingEstimate {
    double t1_bound = 0.0;  ///< excited dwell time per downward transition
    double p_eq = 0.0;      ///< excited dwell fraction
    long up = 0;
    long down = 0;
    double excited_time = 0.0;
    double total_time = 0.0;
};

/// Censored-rate estimate: total excited dwell divided by the number of
/// downward transitions. Merged jump pairs push it up, so it reads as a bound.
CountingEstimate estimate_t1_counting(std::span<const JumpReport> reports);

/// Sample-wise average of filtered records fitted to A exp(-t/T1) + B.
/// Parameters of the returned fit are (A, T1, B).
FitResult estimate_t1_fit(std::span<const Record> records, double filter_width);

}  // namespace qnd
