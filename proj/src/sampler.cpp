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

#include <cmath>
#include <numeric>
#include <string>

#include "qnd/errors.hpp"

namespace qnd {

ChannelSplit split_strength(double s_total, double qbar_total, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidParameter("eta must be in (0, 1]");
    const double a = std::sqrt(eta);
    const double b = std::sqrt(1.0 - eta);
    return {a * s_total, b * s_total, a * qbar_total, b * qbar_total};
}

ChannelSplit split_from_observed(const StrengthParams& observed, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidParameter("eta must be in (0, 1]");
    const double a = std::sqrt(eta);
    const double b = std::sqrt(1.0 - eta);
    return {observed.s, observed.s / a * b, observed.qbar, observed.qbar / a * b};
}

double LabelPath::mean() const {
    if (labels.empty()) return 0.0;
    long sum = 0;
    for (auto l : labels) sum += l;
    return static_cast<double>(sum) / static_cast<double>(labels.size());
}

int sample_label(double z, StreamRng& rng) { return rng.uniform() < 0.5 * (1.0 + z) ? 1 : -1; }

Outcome sample_outcome(int label, const StrengthParams& sp, StreamRng& rng) {
    const double i = label * sp.s + rng.normal();
    const double q = sp.qbar + rng.normal();
    return {i, q};
}

TelegraphKernel::TelegraphKernel(const QubitParams& qp, double dt) : dt_(dt) {
    const double down = qp.gamma_down();
    const double up = qp.gamma_up();
    const double total = down + up;
    if (total > 0.0) {
        const double moved = -std::expm1(-total * dt);
        p_down_ = down / total * moved;
        p_up_ = up / total * moved;
    }
}

LabelPath sample_telegraph(const QubitParams& qp, int initial, double duration, double dt,
                           StreamRng& rng) {
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    if (dt >= qp.t1 / 10.0)
        throw InvalidParameter("dt must be below t1/10 for the telegraph discretization");
    if (initial != 1 && initial != -1) throw InvalidParameter("initial label must be +1 or -1");
    const long n = std::lround(duration / dt);
    if (n < 1) throw InvalidParameter("duration must cover at least one sample");
    const TelegraphKernel kernel(qp, dt);
    LabelPath path{std::vector<std::int8_t>(static_cast<std::size_t>(n)), dt};
    int label = initial;
    path.labels[0] = static_cast<std::int8_t>(label);
    for (long k = 1; k < n; ++k) {
        label = kernel.step(label, rng);
        path.labels[static_cast<std::size_t>(k)] = static_cast<std::int8_t>(label);
    }
    return path;
}

WindowSample sample_window(const TelegraphKernel& kernel, int initial, long n_samples,
                           StreamRng& rng) {
    int label = initial;
    long sum = label;
    for (long k = 1; k < n_samples; ++k) {
        label = kernel.step(label, rng);
        sum += label;
    }
    return {static_cast<double>(sum) / static_cast<double>(n_samples), label};
}

std::vector<double> cavity_response(const LabelPath& path, double response_time) {
    std::vector<double> out(path.labels.begin(), path.labels.end());
    if (response_time <= 0.0) return out;
    const double alpha = -std::expm1(-path.dt / response_time);
    double field = 0.0;
    for (auto& v : out) {
        field += alpha * (v - field);
        v = field;
    }
    return out;
}

Outcome integrated_outcome(const LabelPath& path, const StrengthParams& sp, StreamRng& rng,
                           double response_time) {
    if (path.labels.empty()) throw InvalidParameter("label path is empty");
    double mean = 0.0;
    if (response_time > 0.0) {
        const auto field = cavity_response(path, response_time);
        mean = std::accumulate(field.begin(), field.end(), 0.0) / static_cast<double>(field.size());
    } else {
        mean = path.mean();
    }
    const double i = sp.s * mean + rng.normal();
    const double q = sp.qbar + rng.normal();
    return {i, q};
}

WeakMeasurement measure_weak(const Bloch& init, const ChannelSplit& split, StreamRng& rng) {
    WeakMeasurement m;
    m.label = sample_label(init.z(), rng);
    m.observed = sample_outcome(m.label, split.observed(), rng);
    m.state = update_general(init, m.observed, split.observed(), 1.0);
    if (split.s_lost > 0.0) {
        m.lost = sample_outcome(m.label, split.lost(), rng);
        m.state = update_general(m.state, m.lost, split.lost(), 1.0);
    }
    return m;
}

}  // namespace qnd
