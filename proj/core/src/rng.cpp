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
#include "levysup/rng.hpp"

#include <cmath>

namespace levysup {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

// Doornik's ZIGNOR tables, 128 blocks.
struct Ziggurat {
    static constexpr double kR = 3.442619855899;
    static constexpr double kV = 9.91256303526217e-3;
    double x[129];
    double ratio[128];

    Ziggurat() {
        double f = std::exp(-0.5 * kR * kR);
        x[0] = kV / f;
        x[1] = kR;
        x[128] = 0.0;
        for (int i = 2; i < 128; ++i) {
            x[i] = std::sqrt(-2.0 * std::log(kV / x[i - 1] + f));
            f = std::exp(-0.5 * x[i] * x[i]);
        }
        for (int i = 0; i < 128; ++i) ratio[i] = x[i + 1] / x[i];
    }
};

const Ziggurat& zig() {
    static const Ziggurat z;
    return z;
}

double to_open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

void CounterRng::refill() {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(step_), static_cast<std::uint32_t>(step_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                           static_cast<std::uint32_t>(seed_ >> 32)};
    buf_ = philox4x32(ctr, key);
    ++step_;
    used_ = 0;
}

std::uint64_t CounterRng::next_u64() {
    if (used_ > 2) refill();
    const std::uint64_t v = (static_cast<std::uint64_t>(buf_[used_]) << 32) | buf_[used_ + 1];
    used_ += 2;
    return v;
}

double CounterRng::uniform() { return to_open_unit(next_u64()); }

double CounterRng::exponential() { return -std::log(uniform()); }

double CounterRng::normal() {
    const Ziggurat& z = zig();
    for (;;) {
        const std::uint64_t bits = next_u64();
        const double u = 2.0 * to_open_unit(bits) - 1.0;
        const int i = static_cast<int>(bits & 0x7F);
        if (std::abs(u) < z.ratio[i]) return u * z.x[i];
        if (i == 0) {
            // Marsaglia's tail method beyond R.
            double xt, yt;
            do {
                xt = std::log(uniform()) / Ziggurat::kR;
                yt = std::log(uniform());
            } while (-2.0 * yt < xt * xt);
            return u < 0 ? xt - Ziggurat::kR : Ziggurat::kR - xt;
        }
        const double xx = u * z.x[i];
        const double f0 = std::exp(-0.5 * (z.x[i] * z.x[i] - xx * xx));
        const double f1 = std::exp(-0.5 * (z.x[i + 1] * z.x[i + 1] - xx * xx));
        if (f1 + uniform() * (f0 - f1) < 1.0) return xx;
    }
}

CounterRng CounterRng::substream(std::uint64_t label) const {
    return CounterRng(seed_, mix64(stream_ ^ mix64(label + 0x632BE59BD9B4E019ull)));
}

}  // namespace levysup
