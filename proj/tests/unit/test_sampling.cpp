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
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levysup/measure.hpp"
#include "levysup/model.hpp"
#include "levysup/model_io.hpp"
#include "levysup/rng.hpp"
#include "levysup/sampling.hpp"
#include "oracles.hpp"

using namespace levysup;

namespace {

TemperedStable ts(double cp, double cm, double ap, double am, double lp, double lm) {
    TemperedStable p;
    p.c_plus = cp;
    p.c_minus = cm;
    p.alpha_plus = ap;
    p.alpha_minus = am;
    p.lambda_plus = lp;
    p.lambda_minus = lm;
    return p;
}

// u with dt |Re psi(iu)| close to `target`, by bracketing and bisection on log u.
double frequency_for(const LevyModel& m, double dt, double target) {
    auto level = [&](double u) { return dt * -char_exponent(m, u).real(); };
    double lo = 1.0, hi = 1.0;
    while (level(lo) > target) lo /= 2;
    while (level(hi) < target && hi < 1e3) hi *= 2;
    if (level(hi) < target) return -1.0;  // bounded exponent (compound Poisson)
    for (int i = 0; i < 30; ++i) {
        const double mid = std::sqrt(lo * hi);
        (level(mid) < target ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

void check_cf(const LevyModel& m, double dt, SamplerOptions opts, const std::string& label, int n = 200000) {
    const IncrementSampler s(m, dt, opts);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        CounterRng rng(4242, static_cast<std::uint64_t>(i));
        xs[i] = s.draw(rng);
        ASSERT_TRUE(std::isfinite(xs[i])) << label;
    }
    for (double target : {0.1, 0.5, 1.5}) {
        const double u = frequency_for(m, dt, target);
        if (u < 0) continue;
        std::complex<double> emp = 0.0;
        for (double x : xs) emp += std::polar(1.0, u * x);
        emp /= static_cast<double>(n);
        const std::complex<double> th = std::exp(dt * char_exponent(m, u));
        EXPECT_LT(std::abs(emp - th), 5.0 / std::sqrt(n)) << label << " u=" << u << " (" << s.info().method << ")";
    }
}

}  // namespace

TEST(Sampling, StableCharacteristicFunction) {
    for (auto [a, b] : {std::pair{1.5, 0.0}, std::pair{1.5, 0.5}, std::pair{1.2, -1.0},
                        std::pair{1.0, 0.3}, std::pair{0.7, 1.0}, std::pair{0.5, -0.4}}) {
        check_cf(stable(a, b, 1.3, 0.2), 0.37, {}, "stable " + std::to_string(a) + "," + std::to_string(b));
    }
}

TEST(Sampling, TemperedStableCharacteristicFunction) {
    check_cf(tempered_stable(ts(1, 1, 1.2, 0.8, 1, 1)), 0.01, {}, "ts 1.2/0.8 dt=0.01");
    check_cf(tempered_stable(ts(1, 1, 1.2, 0.8, 1, 1)), 1.0, {1e3, 1}, "ts 1.2/0.8 dt=1", 20000);
    check_cf(tempered_stable(ts(1, 0.5, 1.5, 1.5, 1, 2)), 0.001, {1e4, 32}, "ts 1.5");
    check_cf(tempered_stable(ts(1, 1, 1.0, 0.5, 1, 1)), 0.01, {}, "ts 1/0.5");
    check_cf(tempered_stable(ts(2, 1, -0.5, 0.0, 1, 3)), 0.5, {}, "ts -0.5/0");
    check_cf(tempered_stable(ts(1, 1, 0.5, 0.3, 2, 1)), 0.05, {}, "ts b.v.");
    check_cf(tempered_stable(ts(1, 1, 0.6, 0.6, 0, 0)), 0.05, {}, "ts untempered");
}

TEST(Sampling, OtherFamiliesCharacteristicFunction) {
    check_cf(gamma_process(2.0, 1.5), 0.3, {}, "gamma");
    check_cf(variance_gamma(1.0, 2.0, 1.0), 0.3, {}, "vg");
    check_cf(normal_inverse_gaussian(2.0, 0.5, 1.0, 0.1), 0.05, {}, "nig");
    check_cf(compound_poisson(0.5, 2.0, JumpDistribution(Atoms{{1.0, -1.0}, {0.5, 0.5}})), 0.4, {}, "cp");
    check_cf(compound_poisson(-0.2, 3.0, JumpDistribution(DoubleExponential{0.4, 2.0, 1.0})), 0.4, {}, "kou");
    check_cf(load_model_file(oracle::fixture("classifier/subordinated_bm.toml")), 0.02, {}, "bm of stable");
    check_cf(composite(0.1, 0.0, tempered_density(ts(1, 1, 1.5, 1.5, 1, 1))), 0.01, {1e4, 32}, "composite");
    check_cf(brownian(0.3, 2.0), 0.1, {}, "bm");
}

TEST(Sampling, GammaInverseGaussianPoisson) {
    CounterRng rng(8, 0);
    const int n = 400000;
    for (double shape : {0.05, 0.7, 3.0}) {
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = sample_gamma(shape, 2.0, rng);
            s += g;
            s2 += g * g;
        }
        const double m = s / n, v = s2 / n - m * m;
        EXPECT_NEAR(m, shape / 2.0, 4 * std::sqrt(shape / 4.0 / n)) << shape;
        EXPECT_NEAR(v / (shape / 4.0), 1.0, 0.05) << shape;
    }
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_inverse_gaussian(1.5, 2.0, rng);
        ASSERT_GT(x, 0.0);
        s += x;
        s2 += x * x;
    }
    const double var = 1.5 * 1.5 * 1.5 / 2.0;
    EXPECT_NEAR(s / n, 1.5, 4 * std::sqrt(var / n));
    EXPECT_NEAR((s2 / n - (s / n) * (s / n)) / var, 1.0, 0.05);
    double p = 0;
    for (int i = 0; i < n; ++i) p += static_cast<double>(sample_poisson(3.7, rng));
    EXPECT_NEAR(p / n, 3.7, 4 * std::sqrt(3.7 / n));
}

TEST(Sampling, SamplerInfo) {
    EXPECT_TRUE(IncrementSampler(brownian(0, 1), 0.01).info().exact);
    EXPECT_TRUE(IncrementSampler(stable(1.5, 0.2), 0.01).info().exact);
    const IncrementSampler t(tempered_stable(ts(1, 1, 1.5, 1.2, 1, 1)), 1e-3);
    EXPECT_FALSE(t.info().exact);
    EXPECT_GT(t.info().threshold, 0.0);
    EXPECT_TRUE(t.info().tracks_big_jumps);
    // an exact stable-rejection side has no jump times to report
    EXPECT_FALSE(IncrementSampler(tempered_stable(ts(1, 1, 1.2, 0.8, 1, 1)), 1e-3).info().tracks_big_jumps);
    const IncrementSampler cp(compound_poisson(0.5, 2.0, JumpDistribution::constant(1.0)), 0.1);
    EXPECT_TRUE(cp.info().exact);
}

TEST(Sampling, BigJumpOffsetsWithinStep) {
    const LevyModel m = compound_poisson(0.0, 50.0, JumpDistribution(Atoms{{2.0, 0.5}, {0.5, 0.5}}));
    const IncrementSampler s(m, 0.1);
    CounterRng rng(3, 3);
    std::vector<double> offs;
    double total = 0;
    for (int i = 0; i < 2000; ++i) {
        offs.clear();
        const double x = s.draw(rng, &offs);
        total += static_cast<double>(offs.size());
        for (double o : offs) {
            ASSERT_GE(o, 0.0);
            ASSERT_LT(o, 0.1);
        }
        ASSERT_GE(x, 2.0 * static_cast<double>(offs.size()));
    }
    EXPECT_NEAR(total / 2000, 2.5, 4 * std::sqrt(2.5 / 2000));
}

TEST(Sampling, SmallTimePositivityAgreesWithInversion) {
    // Gil-Pelaez: P(X_t > 0) = 1/2 + (1/pi) int_0^inf Im phi_t(u) / u du.
    const LevyModel m = load_model_file(oracle::fixture("classifier/cgmy_one_sided_dominant.toml"));
    const double t = 1e-4;
    auto f = [&](double u) { return std::exp(t * char_exponent(m, u)).imag() / u; };
    double integral = f(1e-6) * 1e-6;
    for (double lo = 1e-6; lo < 3e6; lo *= 1.25) {
        integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, 1.25 * lo, 5, 1e-10);
    }
    const double p = 0.5 + integral / 3.14159265358979323846;
    const IncrementSampler s(m, t, SamplerOptions{1e4, 32});
    const int n = 100000;
    int pos = 0;
    for (int i = 0; i < n; ++i) {
        CounterRng rng(77, static_cast<std::uint64_t>(i));
        pos += s.draw(rng) > 0.0;
    }
    EXPECT_NEAR(static_cast<double>(pos) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}
