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

#include <cstdint>
#include <vector>

#include "qnd/bloch.hpp"
#include "qnd/params.hpp"
#include "qnd/random.hpp"

namespace qnd {

/// Inefficiency as a beam splitter: the total measurement strength is shared
/// between an observed channel and a lost channel, additively in the square.
struct ChannelSplit {
    double s_obs = 0.0;
    double s_lost = 0.0;
    double qbar_obs = 0.0;
    double qbar_lost = 0.0;

    StrengthParams observed() const { return {s_obs, qbar_obs}; }
    StrengthParams lost() const { return {s_lost, qbar_lost}; }
};

ChannelSplit split_strength(double s_total, double qbar_total, double eta);

/// Split for a given observed-channel strength: s_total = s_obs / sqrt(eta).
ChannelSplit split_from_observed(const StrengthParams& observed, double eta);

/// Ground-truth qubit labels (+1 = |e>, -1 = |g>) on a uniform time grid.
struct LabelPath {
    std::vector<std::int8_t> labels;
    double dt = 0.0;

    double duration() const { return static_cast<double>(labels.size()) * dt; }
    double mean() const;
};

/// Returns +1 with probability (1 + z) / 2, else -1.
int sample_label(double z, StreamRng& rng);

/// i ~ N(label s, 1), q ~ N(qbar, 1).
Outcome sample_outcome(int label, const StrengthParams& sp, StreamRng& rng);

/// Per-step transition probabilities of the two-state relaxation process,
/// taken from its exact propagator over one sample period.
class TelegraphKernel {
   public:
    TelegraphKernel(const QubitParams& qp, double dt);

    int step(int label, StreamRng& rng) const {
        const double p = label > 0 ? p_down_ : p_up_;
        if (p <= 0.0) return label;
        return rng.uniform() < p ? -label : label;
    }

    double p_down() const { return p_down_; }
    double p_up() const { return p_up_; }
    double dt() const { return dt_; }

   private:
    double p_down_ = 0.0;
    double p_up_ = 0.0;
    double dt_ = 0.0;
};

/// Two-state Markov path. Rejects dt >= t1 / 10.
LabelPath sample_telegraph(const QubitParams& qp, int initial, double duration, double dt,
                           StreamRng& rng);

/// Time average of a label path and the state it ends in, without storing it.
struct WindowSample {
    double mean_label = 0.0;
    int final_label = 0;
};

WindowSample sample_window(const TelegraphKernel& kernel, int initial, long n_samples,
                           StreamRng& rng);

/// One-pole low-pass of the labels, modelling a cavity that rings up with
/// time constant `response_time` from empty. Zero returns the labels as-is.
std::vector<double> cavity_response(const LabelPath& path, double response_time);

/// Outcome from a strength-s integration window over `path`:
/// i = s * mean(label) + N(0, 1), q = qbar + N(0, 1).
Outcome integrated_outcome(const LabelPath& path, const StrengthParams& sp, StreamRng& rng,
                           double response_time = 0.0);

/// A weak measurement of both channels on `init`, with the state updated by
/// each channel's outcome in turn (eta = 1 per channel).
struct WeakMeasurement {
    int label = 0;
    Outcome observed;
    Outcome lost;
    Bloch state;
};

WeakMeasurement measure_weak(const Bloch& init, const ChannelSplit& split, StreamRng& rng);

}  // namespace qnd
