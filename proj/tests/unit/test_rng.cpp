/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "levysup/rng.hpp"

using levysup::CounterRng;

TEST(Philox, KnownAnswerVectors) {
    using A4 = std::array<std::uint32_t, 4>;
    EXPECT_EQ(levysup::philox4x32({0, 0, 0, 0}, {0, 0}),
              (A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(levysup::philox4x32({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}),
              (A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(levysup::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                  {0xa4093822u, 0x299f31d0u}),
              (A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, SameSeedAndStreamReplay) {
    CounterRng a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(CounterRng, StreamsAndSubstreamsDiffer) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 64; ++s) firsts.insert(CounterRng(1, s).next_u64());
    EXPECT_EQ(firsts.size(), 64u);
    CounterRng base(1, 3);
    EXPECT_NE(base.substream(1).next_u64(), base.substream(2).next_u64());
    EXPECT_NE(base.substream(1).next_u64(), CounterRng(1, 3).next_u64());
}

TEST(CounterRng, UniformMoments) {
    CounterRng r(5, 0);
    const int n = 400000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    const double m = s / n, v = s2 / n - m * m;
    EXPECT_NEAR(m, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(v, 1.0 / 12, 4 * std::sqrt(1.0 / 180 / n));
}

TEST(CounterRng, NormalAndExponentialMoments) {
    CounterRng r(9, 1);
    const int n = 400000;
    double s = 0, s2 = 0, s4 = 0, e = 0;
    int tail = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
        s4 += z * z * z * z;
        if (z > 2.0) ++tail;
        e += r.exponential();
    }
    EXPECT_NEAR(s / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 4 * std::sqrt(96.0 / n));
    const double p2 = 0.5 * std::erfc(2.0 / std::sqrt(2.0));
    EXPECT_NEAR(static_cast<double>(tail) / n, p2, 4 * std::sqrt(p2 * (1 - p2) / n));
    EXPECT_NEAR(e / n, 1.0, 4 / std::sqrt(n));
}
