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

#include "qnd/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace qnd {
namespace {

static_assert(std::uniform_random_bit_generator<StreamRng>);

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswers) {
    using Block = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(StreamRng, SameStreamSameSequence) {
    StreamRng a(42, 7), b(42, 7);
    for (int k = 0; k < 1000; ++k) ASSERT_EQ(a(), b());
}

TEST(StreamRng, StreamsAndSeedsDiffer) {
    StreamRng a(42, 7), b(42, 8), c(43, 7);
    int same_b = 0, same_c = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto x = a();
        same_b += x == b();
        same_c += x == c();
    }
    EXPECT_EQ(same_b, 0);
    EXPECT_EQ(same_c, 0);
}

TEST(StreamRng, UsesFullStreamIdWidth) {
    StreamRng a(1, 5), b(1, 5 + (std::uint64_t{1} << 40));
    EXPECT_NE(a(), b());
}

TEST(StreamRng, CountsBlocks) {
    StreamRng r(1, 1);
    EXPECT_EQ(r.blocks(), 0u);
    r();
    r();
    EXPECT_EQ(r.blocks(), 1u);
    r();
    EXPECT_EQ(r.blocks(), 2u);
}

TEST(StreamRng, UniformMomentsAndRange) {
    StreamRng r(3, 0);
    const int n = 1'000'000;
    double sum = 0, sum2 = 0;
    for (int k = 0; k < n; ++k) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n, var = sum2 / n - mean * mean;
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(var, 1.0 / 12, 5 * std::sqrt(1.0 / 180 / n));
}

TEST(StreamRng, NormalMoments) {
    StreamRng r(4, 0);
    const int n = 1'000'000;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
    for (int k = 0; k < n; ++k) {
        const double x = r.normal();
        m1 += x;
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
    }
    m1 /= n, m2 /= n, m3 /= n, m4 /= n;
    EXPECT_NEAR(m1, 0.0, 5 / std::sqrt(n));
    EXPECT_NEAR(m2, 1.0, 5 * std::sqrt(2.0 / n));
    EXPECT_NEAR(m3, 0.0, 5 * std::sqrt(15.0 / n));
    EXPECT_NEAR(m4, 3.0, 5 * std::sqrt(96.0 / n));
}

TEST(StreamRng, NormalTailMatchesGaussian) {
    StreamRng r(5, 0);
    const int n = 2'000'000;
    int beyond = 0;
    for (int k = 0; k < n; ++k) beyond += std::abs(r.normal()) > 3.0;
    const double p = std::erfc(3.0 / std::sqrt(2.0));
    EXPECT_NEAR(static_cast<double>(beyond) / n, p, 5 * std::sqrt(p / n));
}

TEST(StreamRng, AdjacentStreamsUncorrelated) {
    const int n = 200'000;
    double sxy = 0;
    for (int k = 0; k < n; ++k) {
        StreamRng a(9, static_cast<std::uint64_t>(k)), b(9, static_cast<std::uint64_t>(k) + 1);
        sxy += a.normal() * b.normal();
    }
    EXPECT_NEAR(sxy / n, 0.0, 5 / std::sqrt(n));
}

TEST(StreamRng, WorksWithStandardDistributions) {
    StreamRng r(6, 0);
    std::uniform_int_distribution<int> die(1, 6);
    std::vector<int> counts(7);
    for (int k = 0; k < 60000; ++k) ++counts[die(r)];
    for (int f = 1; f <= 6; ++f) EXPECT_NEAR(counts[f], 10000, 500);
}

}  // namespace
}  // namespace qnd
