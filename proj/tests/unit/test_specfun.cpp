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

#include <boost/math/special_functions/zeta.hpp>

#include "levysup/classify.hpp"
#include "levysup/error.hpp"
#include "levysup/rng.hpp"
#include "levysup/sampling.hpp"
#include "levysup/specfun.hpp"
#include "oracles.hpp"

using namespace levysup;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> s_grid() {
    std::vector<double> s;
    for (int i = 0; i < 25; ++i) s.push_back(-2.0 + i * (2.85 / 24));   // [-2, 0.85]
    for (int i = 0; i < 25; ++i) s.push_back(1.15 + i * (8.85 / 24));   // [1.15, 10]
    return s;
}
}  // namespace

TEST(Specfun, ZetaValues) {
    EXPECT_NEAR(zeta(2.0), kPi * kPi / 6.0, 1e-13);
    EXPECT_NEAR(zeta(0.0), -0.5, 1e-14);
    EXPECT_NEAR(zeta(-1.0), -1.0 / 12.0, 1e-13);
    EXPECT_NEAR(zeta(4.0), std::pow(kPi, 4) / 90.0, 1e-13);
    EXPECT_THROW(zeta(1.0), PoleError);
}

TEST(Specfun, ZetaAgainstBoost) {
    for (double s : s_grid()) {
        const double ref = boost::math::zeta(s);
        EXPECT_NEAR(zeta(s), ref, 1e-11 * std::max(1.0, std::abs(ref))) << s;
    }
}

TEST(Specfun, EtaIdentityResidual) {
    const auto grid = s_grid();
    ASSERT_EQ(grid.size(), 50u);
    for (double s : grid) {
        const double residual = dirichlet_eta(s) - (1.0 - std::pow(2.0, 1.0 - s)) * boost::math::zeta(s);
        EXPECT_LT(std::abs(residual), 1e-11) << s;
    }
    EXPECT_NEAR(dirichlet_eta(1.0), std::log(2.0), 1e-14);
}

TEST(Specfun, PositivePartClosedForm) {
    for (double a : {1.2, 1.5, 1.8}) {
        for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const double rho = positivity_rho(a, b);
            for (double c : {1.0, 2.5}) {
                const double ref = oracle::stable_positive_part_mellin(a, b, c);
                EXPECT_NEAR(expected_positive_part(a, rho, c) / ref, 1.0, 1e-10) << a << " " << b;
            }
        }
    }
    EXPECT_NEAR(expected_positive_part(2.0, 0.5, 1.0), 1.0 / std::sqrt(2 * kPi), 1e-15);
    EXPECT_NEAR(expected_abs(2.0, 0.5, 3.0), 3.0 * std::sqrt(2.0 / kPi), 1e-14);
    EXPECT_THROW(expected_positive_part(0.8, 0.5), UnsupportedError);
}

TEST(Specfun, PositivePartMonteCarlo) {
    for (double a : {1.2, 1.5, 1.8, 2.0}) {
        std::vector<double> rhos{0.5};
        if (a < 2.0) rhos = {1.0 - 1.0 / a, 0.5, 1.0 / a};
        for (double rho : rhos) {
            const double beta = a < 2.0 ? skew_from_rho(a, rho) : 0.0;
            CounterRng rng(31, static_cast<std::uint64_t>(a * 100 + rho * 10));
            const int n = 1000000;
            double s = 0, s2 = 0;
            for (int i = 0; i < n; ++i) {
                const double x = a < 2.0 ? sample_stable(a, beta, 1.0, rng) : rng.normal();
                const double p = std::max(x, 0.0);
                s += p;
                s2 += p * p;
            }
            const double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
            EXPECT_NEAR(m, expected_positive_part(a, rho, 1.0), 3 * se) << a << " " << rho;
        }
    }
}

TEST(Specfun, CorrectionConstants) {
    const Correction bm = expected_vhat(classify(brownian(0.0, 1.0)));
    EXPECT_NEAR(bm.e_vhat, oracle::brownian_vhat(), 1e-11);
    EXPECT_NEAR(bm.e_vhat, 0.58260, 5e-6);
    const Correction bm2 = expected_vhat(classify(brownian(0.0, 2.0)));
    EXPECT_NEAR(bm2.e_vhat, 2.0 * oracle::brownian_vhat(), 1e-10);
    EXPECT_NEAR(bm2.e_vhat_unit, oracle::brownian_vhat(), 1e-11);

    const Correction st = expected_vhat(classify(stable(1.5, 0.0)));
    EXPECT_NEAR(st.e_pos, oracle::stable_positive_part_mellin(1.5, 0.0, 1.0), 1e-11);
    EXPECT_NEAR(st.e_vhat, -boost::math::zeta(1.0 / 3.0) * st.e_pos, 1e-11);
    EXPECT_THROW(expected_vhat(classify(stable(0.8, 0.0))), UnsupportedError);
    EXPECT_THROW(expected_vhat(classify(normal_inverse_gaussian(2.0, 0.5, 1.0))), UnsupportedError);
}

TEST(Specfun, BrownianSupremumLaw) {
    for (double x : {0.1, 0.7, 1.0, 2.5}) {
        EXPECT_NEAR(brownian_sup_cdf(x), 2 * oracle::norm_cdf(x) - 1.0, 1e-14);
        EXPECT_NEAR(brownian_sup_density(x), 2 * oracle::norm_pdf(x), 1e-14);
        for (double mu : {-0.7, 0.4}) {
            const double h = 1e-5;
            const double fd = (brownian_sup_cdf(x + h, mu, 1.3) - brownian_sup_cdf(x - h, mu, 1.3)) / (2 * h);
            EXPECT_NEAR(brownian_sup_density(x, mu, 1.3), fd, 1e-7);
        }
    }
    EXPECT_NEAR(brownian_sup_cdf(0.0, 0.3), 0.0, 1e-15);
}
