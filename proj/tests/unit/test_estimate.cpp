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

#include "levysup/classify.hpp"
#include "levysup/error.hpp"
#include "levysup/estimate.hpp"
#include "levysup/model_io.hpp"
#include "levysup/parallel.hpp"
#include "levysup/specfun.hpp"
#include "oracles.hpp"

using namespace levysup;

namespace {

RunConfig config(std::uint64_t reps, std::uint64_t seed, std::size_t k = 16, unsigned workers = 1) {
    RunConfig c;
    c.reps = reps;
    c.seed = seed;
    c.fine_factor = k;
    c.workers = workers;
    return c;
}

}  // namespace

TEST(Estimate, RunningStatMerge) {
    RunningStat all, a, b;
    CounterRng rng(1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.normal() * 3 + 1;
        all.add(x);
        (i < 370 ? a : b).add(x);
    }
    a.merge(b);
    EXPECT_EQ(a.count, all.count);
    EXPECT_NEAR(a.mean, all.mean, 1e-12);
    EXPECT_NEAR(a.variance(), all.variance(), 1e-10);
    const MCResult r = make_result(all, 9, "t");
    EXPECT_NEAR(r.std_err, std::sqrt(all.variance() / 1000), 1e-15);
    EXPECT_LT(r.ci_low, r.estimate);
    EXPECT_GT(r.ci_high, r.estimate);
    EXPECT_EQ(r.seed, 9u);
}

TEST(Estimate, RunBlocksIndependentOfWorkers) {
    auto body = [](std::uint64_t rep, RunningStat& acc) {
        CounterRng rng(3, rep);
        acc.add(rng.normal());
    };
    const RunningStat one = run_blocks(5000, 1, RunningStat{}, body);
    const RunningStat four = run_blocks(5000, 4, RunningStat{}, body);
    EXPECT_EQ(one.mean, four.mean);
    EXPECT_EQ(one.m2, four.m2);
    EXPECT_THROW(run_blocks(100, 2, RunningStat{}, [](std::uint64_t r, RunningStat&) {
                     if (r == 57) throw ValidationError("boom");
                 }),
                 ValidationError);
}

TEST(Estimate, LogLogFit) {
    std::vector<double> x{64, 128, 256, 512, 1024}, y, se;
    for (double v : x) {
        y.push_back(3.0 * std::pow(v, -0.5));
        se.push_back(0.01 * y.back());
    }
    const RateFit f = loglog_fit(x, y, se);
    EXPECT_NEAR(f.slope, -0.5, 1e-12);
    EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-10);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_THROW(loglog_fit({1, 2, 3}, {1, 1, 1}, {0.1, 0.1, 0.1}), InsufficientDataError);
    EXPECT_THROW(loglog_fit({1, 2, 3, 4}, {1, 0, 1, 1}, {0.1, 0.1, 0.1, 0.1}), InsufficientDataError);
}

TEST(Estimate, MomentErrorMatchesSpitzerOracle) {
    const LevyModel m = brownian(0.0, 1.0);
    const MomentStudy st = moment_error(m, classify(m), 1.0, {16, 64, 256}, config(40000, 2));
    ASSERT_EQ(st.rows.size(), 3u);
    EXPECT_TRUE(st.exact_supremum);
    for (const auto& r : st.rows) {
        EXPECT_NEAR(r.scaled.estimate, oracle::brownian_scaled_gap(r.n), 4 * r.scaled.std_err) << r.n;
        EXPECT_NEAR(r.unscaled.estimate * std::sqrt(static_cast<double>(r.n)), r.scaled.estimate, 1e-12);
        EXPECT_NEAR(r.bn, std::sqrt(static_cast<double>(r.n)), 1e-12);
    }
    EXPECT_NEAR(st.tau_interior.estimate, 1.0, 1e-12);
}

TEST(Estimate, BrownianMomentBandAtN256) {
    const LevyModel m = brownian(0.0, 1.0);
    const MomentStudy st = moment_error(m, classify(m), 1.0, {256}, config(100000, 3));
    EXPECT_NEAR(st.rows[0].scaled.estimate, 0.583, 0.01);
}

TEST(Estimate, MomentErrorDeterministicAcrossWorkers) {
    const LevyModel m = stable(1.5, 0.0);
    const ZoomClass zc = classify(m);
    const MomentStudy a = moment_error(m, zc, 1.0, {16, 32}, config(3000, 4, 8, 1));
    const MomentStudy b = moment_error(m, zc, 1.0, {16, 32}, config(3000, 4, 8, 3));
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].scaled.estimate, b.rows[i].scaled.estimate);
        EXPECT_EQ(a.rows[i].scaled.std_err, b.rows[i].scaled.std_err);
        EXPECT_EQ(a.rows[i].excluded.estimate, b.rows[i].excluded.estimate);
    }
}

TEST(Estimate, MomentWarningWhenBigJumpsTooHeavy) {
    const LevyModel m = compound_poisson(0.3, 1.0, JumpDistribution(Pareto{1.5, 1.0, 0.5}));
    const MomentStudy st = moment_error(m, classify(m), 2.0, {16}, config(200, 5));
    EXPECT_FALSE(st.warning.empty());
}

TEST(Estimate, DeltaIsNestedUnderCommonRandomNumbers) {
    for (const char* f : {"models/bm.toml", "models/stable15.toml", "models/cpp.toml"}) {
        const LevyModel m = load_model_file(oracle::fixture(f));
        const auto rows = delta_probability(m, classify(m), {0.5, 1.0}, {8, 16, 32, 64}, config(4000, 6, 8));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].x != rows[i - 1].x) continue;
            EXPECT_LE(rows[i].delta.estimate, rows[i - 1].delta.estimate) << f;
            EXPECT_EQ(rows[i].exceed.estimate, rows[i - 1].exceed.estimate) << f;
        }
    }
}

TEST(Estimate, BrownianExceedanceProbability) {
    const LevyModel m = brownian(0.0, 1.0);
    const auto rows = delta_probability(m, classify(m), {1.0}, {64}, config(50000, 7));
    const double p = 2 * (1 - oracle::norm_cdf(1.0));
    EXPECT_NEAR(rows[0].exceed.estimate, p, 4 * rows[0].exceed.std_err);
}

TEST(Estimate, BrownianDensityOfSupremum) {
    const LevyModel m = brownian(0.0, 1.0);
    const auto rows = density_at(m, {0.5, 1.0, 1.5}, 4096, config(20000, 8));
    for (const auto& r : rows) {
        EXPECT_NEAR(r.estimate.estimate / (2 * oracle::norm_pdf(r.x)), 1.0, 0.05) << r.x;
        EXPECT_GT(r.bandwidth, 0.0);
    }
    EXPECT_THROW(density_at(stable(0.8, 0.0), {1.0}, 64, config(200, 1)), UnsupportedError);
}

TEST(Estimate, CppOracleOneSidedJumps) {
    // Upward jumps and downward drift: the integral vanishes and n E(M - M^(n)) -> P(tau in (0,1)) / 2.
    const LevyModel m = compound_poisson(-1.0, 1.0, JumpDistribution::constant(2.0));
    const CppLimit lim = cpp_limit_rhs(m, config(100000, 9));
    EXPECT_EQ(lim.integral.estimate, 0.0);
    EXPECT_NEAR(lim.rhs.estimate, 0.5 * lim.tau_interior.estimate, 1e-12);
    const MomentStudy st = moment_error(m, classify(m), 1.0, {1024}, config(100000, 10));
    const double direct = 1024.0 * st.rows[0].unscaled.estimate;
    const double se = std::hypot(1024.0 * st.rows[0].unscaled.std_err, lim.rhs.std_err);
    EXPECT_NEAR(direct, lim.rhs.estimate, 4 * se);
    EXPECT_THROW(cpp_limit_rhs(stable(1.5, 0.0), config(100, 1)), UnsupportedError);
}

TEST(Estimate, BrownianArcsineLawForTau) {
    const LevyModel m = brownian(0.0, 1.0);
    const SmallTimeTails st = small_time_tails(m, {0.01, 0.05, 0.2}, 16384, config(20000, 11));
    for (const auto& pt : st.tau_below) {
        const double ref = 2.0 / 3.14159265358979323846 * std::asin(std::sqrt(pt.eps));
        EXPECT_NEAR(pt.prob.estimate, ref, 4 * pt.prob.std_err + 0.005) << pt.eps;
    }
    for (const auto& pt : st.sup_below) {
        EXPECT_NEAR(pt.prob.estimate, 2 * oracle::norm_cdf(pt.eps) - 1, 4 * pt.prob.std_err + 0.01) << pt.eps;
    }
}

TEST(Estimate, PositivityOfBrownianIncrements) {
    const auto pts = positivity(brownian(0.0, 1.0), {1e-2, 1e-4}, config(100000, 12));
    for (const auto& pt : pts) EXPECT_NEAR(pt.prob.estimate, 0.5, 4 * pt.prob.std_err);
}

TEST(Estimate, TailIndexOfExactPowerLaw) {
    std::vector<ProbPoint> pts;
    for (double e : {1e-1, 1e-2, 1e-3, 1e-4}) {
        MCResult r;
        r.estimate = 0.7 * std::pow(e, 0.4);
        r.std_err = 0.01 * r.estimate;
        pts.push_back({e, r});
    }
    EXPECT_NEAR(tail_index(pts).slope, 0.4, 1e-12);
}

TEST(Estimate, RateFitRequiresDyadicGrid) {
    const LevyModel m = stable(1.5, 0.0);
    EXPECT_THROW(rate_fit(m, RateQuantity::Moment, {16, 32, 64}, 1.0, config(200, 1)), Error);
    EXPECT_THROW(rate_fit(m, RateQuantity::Moment, {16, 24, 32, 64}, 1.0, config(200, 1)), Error);
    const RateStudy st = rate_fit(brownian(0, 1), RateQuantity::Moment, {16, 32, 64, 128}, 1.0, config(20000, 2));
    EXPECT_NEAR(st.fit.slope, -0.5, 0.05);
    EXPECT_EQ(st.values.size(), 4u);
}
