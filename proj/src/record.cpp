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

#include <algorithm>
#include <cmath>

#include "qnd/errors.hpp"

namespace qnd {

Eigen::VectorXd binomial_taps(int n) {
    if (n < 0) throw InvalidParameter("binomial order must be non-negative");
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    row(0) = 1.0;
    for (int m = 1; m <= n; ++m) {
        for (int k = m; k >= 1; --k) row(k) = 0.5 * (row(k) + row(k - 1));
        row(0) *= 0.5;
    }
    return row;
}

double binomial_noise_scale(int n) { return binomial_taps(n).norm(); }

Record generate_record(const StrengthParams& sp, const QubitParams& qp, double duration,
                       const DriveParams& drive, double initial_z, SeedPlan seeds,
                       double response_time) {
    const double ratio = duration / drive.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(ratio, 1.0))
        throw InvalidParameter("record duration must be an integer multiple of dt");
    const int order = static_cast<int>(drive.samples_per_window());
    const double s_inst = sp.s * binomial_noise_scale(order);

    StreamRng rng(seeds);
    const int initial = sample_label(initial_z, rng);
    Record rec;
    rec.dt = drive.dt;
    rec.seed = seeds;
    rec.truth = sample_telegraph(qp, initial, duration, drive.dt, rng);
    const auto field = cavity_response(rec.truth, response_time);
    rec.samples.resize(field.size());
    for (std::size_t k = 0; k < field.size(); ++k) rec.samples[k] = s_inst * field[k] + rng.normal();
    return rec;
}

Record binomial_filter(const Record& r, double width, std::optional<double> noise_sigma) {
    if (!(width >= r.dt)) throw InvalidParameter("filter width must be at least one sample period");
    const double ratio = width / r.dt;
    const long order = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(order)) > 1e-9 * ratio)
        throw InvalidParameter("filter width must be an integer multiple of dt");
    if (order % 2 != 0) throw InvalidParameter("filter width / dt must be even (odd tap count)");
    const long half = order / 2;

    std::vector<Eigen::VectorXd> taps;
    taps.reserve(static_cast<std::size_t>(half + 1));
    for (long h = 0; h <= half; ++h) taps.push_back(binomial_taps(static_cast<int>(2 * h)));

    double scale = 1.0;
    if (noise_sigma) {
        if (!(*noise_sigma > 0.0)) throw InvalidParameter("noise sigma must be positive");
        scale = 1.0 / (*noise_sigma * taps.back().norm());
    }

    Record out = r;
    const long n = static_cast<long>(r.samples.size());
    for (long k = 0; k < n; ++k) {
        const long h = std::min({half, k, n - 1 - k});
        const auto& c = taps[static_cast<std::size_t>(h)];
        double acc = 0.0;
        for (long j = 0; j <= 2 * h; ++j) acc += c(j) * r.samples[static_cast<std::size_t>(k - h + j)];
        out.samples[static_cast<std::size_t>(k)] = acc * scale;
    }
    return out;
}

Record trim_edges(const Record& r, long count) {
    Record out;
    out.dt = r.dt;
    out.seed = r.seed;
    out.truth.dt = r.truth.dt;
    const long n = static_cast<long>(r.samples.size());
    if (2 * count >= n) return out;
    out.samples.assign(r.samples.begin() + count, r.samples.end() - count);
    if (static_cast<long>(r.truth.labels.size()) == n)
        out.truth.labels.assign(r.truth.labels.begin() + count, r.truth.labels.end() - count);
    return out;
}

long JumpReport::count(int direction) const {
    return std::count_if(jumps.begin(), jumps.end(),
                         [direction](const Jump& j) { return j.direction == direction; });
}

JumpReport detect_jumps(const Record& filtered, double s, double threshold) {
    if (!(s > 0.0)) throw InvalidParameter("detect_jumps: strength must be positive (state centers coincide)");
    if (!(threshold > 0.0)) throw InvalidParameter("detect_jumps: threshold must be positive");

    JumpReport report;
    const auto& x = filtered.samples;
    report.duration = filtered.duration();
    if (x.empty()) return report;

    int state = x.front() >= 0.0 ? 1 : -1;
    double segment_start = 0.0;
    auto close_segment = [&](double end) {
        const double length = end - segment_start;
        report.segments.push_back({state, segment_start, length});
        (state > 0 ? report.excited_time : report.ground_time) += length;
        segment_start = end;
    };

    for (std::size_t k = 1; k < x.size(); ++k) {
        const double deviation = (x[k] - state * s) * -state;  // toward the other center
        const bool nearer_other = state > 0 ? x[k] < 0.0 : x[k] >= 0.0;
        if (deviation >= threshold && nearer_other) {
            const double t = static_cast<double>(k) * filtered.dt;
            close_segment(t);
            state = -state;
            report.jumps.push_back({t, state});
        }
    }
    close_segment(report.duration);
    return report;
}

CountingEstimate estimate_t1_counting(std::span<const JumpReport> reports) {
    if (reports.empty()) throw InvalidParameter("estimate_t1_counting: no reports");
    CountingEstimate est;
    for (const auto& r : reports) {
        est.up += r.count(1);
        est.down += r.count(-1);
        est.excited_time += r.excited_time;
        est.total_time += r.duration;
    }
    if (est.down == 0)
        throw InsufficientStatistics("estimate_t1_counting: no downward transitions observed");
    est.t1_bound = est.excited_time / static_cast<double>(est.down);
    est.p_eq = est.excited_time / est.total_time;
    return est;
}

FitResult estimate_t1_fit(std::span<const Record> records, double filter_width) {
    if (records.empty()) throw InvalidParameter("estimate_t1_fit: no records");
    const double dt = records.front().dt;
    const auto n = records.front().samples.size();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (const auto& r : records) {
        if (r.dt != dt || r.samples.size() != n)
            throw InvalidParameter("estimate_t1_fit: records differ in dt or length");
        mean += Eigen::Map<const Eigen::VectorXd>(r.samples.data(), static_cast<Eigen::Index>(n));
    }
    mean /= static_cast<double>(records.size());

    // The filter is linear, so filtering the average equals averaging the
    // filtered records.
    Record avg;
    avg.dt = dt;
    avg.samples.assign(mean.data(), mean.data() + n);
    const Record smooth = binomial_filter(avg, filter_width);

    const Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), 0.0,
                                                         dt * static_cast<double>(n - 1));
    const Eigen::Map<const Eigen::VectorXd> y(smooth.samples.data(), static_cast<Eigen::Index>(n));
    return exponential_fit(t, y);
}

}  // namespace qnd
