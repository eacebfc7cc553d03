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

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace qnd {

/// Philox4x32-10 block function (Salmon et al., counter-based).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMulA = 0xD2511F53u;
    constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kMulA} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMulB} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

/// Identifies one independent random stream: a run-wide master seed plus a
/// per-work-unit stream id (trial or trace index).
struct SeedPlan {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

/// Counter-based generator. The n-th output of stream (seed, id) is a pure
/// function of (seed, id, n), so results never depend on which thread drew
/// them or in what order streams were visited.
class StreamRng {
   public:
    using result_type = std::uint64_t;

    explicit StreamRng(SeedPlan plan)
        : key_{static_cast<std::uint32_t>(plan.master_seed),
               static_cast<std::uint32_t>(plan.master_seed >> 32)},
          stream_(plan.stream_id) {}
    StreamRng(std::uint64_t master_seed, std::uint64_t stream_id)
        : StreamRng(SeedPlan{master_seed, stream_id}) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1p-53; }

    /// Standard normal deviate (Box-Muller; the sine branch is cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double phi = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Number of Philox blocks consumed so far.
    std::uint64_t blocks() const { return block_; }

   private:
    void refill() {
        const auto out = philox4x32({static_cast<std::uint32_t>(block_),
                                     static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(stream_),
                                     static_cast<std::uint32_t>(stream_ >> 32)},
                                    key_);
        ++block_;
        // Consumed back to front by operator().
        buffer_[1] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[0] = (std::uint64_t{out[3]} << 32) | out[2];
        buffered_ = 2;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qnd
