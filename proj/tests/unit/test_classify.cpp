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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levysup/classify.hpp"
#include "levysup/error.hpp"
#include "levysup/measure.hpp"
#include "levysup/model_io.hpp"
#include "levysup/rng.hpp"
#include "levysup/sampling.hpp"
#include "oracles.hpp"

using namespace levysup;
using nlohmann::json;

namespace {

json expected_table() {
    std::ifstream in(oracle::fixture("classifier/expected.json"));
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

void check_row(const json& row) {
    const std::string file = row["file"];
    const ZoomClass zc = classify(load_model_file(oracle::fixture("classifier/" + file)));
    EXPECT_EQ(to_string(zc.kind), row["kind"].get<std::string>()) << file << ": " << zc.justification << zc.reason;
    if (row.contains("alpha")) EXPECT_NEAR(zc.alpha, row["alpha"].get<double>(), 1e-9) << file;
    if (row.contains("rho")) EXPECT_NEAR(zc.rho, row["rho"].get<double>(), 1e-9) << file;
    if (row.contains("sign")) EXPECT_EQ(zc.drift_sign, row["sign"].get<int>()) << file;
    EXPECT_FALSE(zc.justification.empty() && zc.reason.empty()) << file;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

TemperedStable ts(double cp, double cm, double ap, double am, double lp, double lm, double drift = 0.0) {
    TemperedStable p;
    p.c_plus = cp;
    p.c_minus = cm;
    p.alpha_plus = ap;
    p.alpha_minus = am;
    p.lambda_plus = lp;
    p.lambda_minus = lm;
    p.drift = drift;
    return p;
}

}  // namespace

TEST(Classify, FixtureTable) {
    const json t = expected_table();
    ASSERT_EQ(t["rows"].size(), 8u);
    for (const auto& row : t["rows"]) check_row(row);
}

TEST(Classify, ExtraFixtures) {
    for (const auto& row : expected_table()["extra"]) check_row(row);
}

TEST(Classify, OscillatingCarriesEvidence) {
    const ZoomClass zc = classify(oscillating_model());
    EXPECT_EQ(zc.kind, LimitKind::Undetermined);
    EXPECT_FALSE(zc.reason.empty());
    EXPECT_GE(zc.evidence.drift_ratio.size(), 3u);
}

TEST(Classify, RulePrecedence) {
    const ZoomClass g = classify(composite(0.0, 0.5, tempered_density(ts(1, 1, 1.5, 1.5, 1, 1))));
    EXPECT_EQ(g.kind, LimitKind::Brownian);
    EXPECT_DOUBLE_EQ(g.scale, 0.5);
    EXPECT_DOUBLE_EQ(g.rho, 0.5);
    EXPECT_DOUBLE_EQ(g.alpha, 2.0);

    const ZoomClass d = classify(tempered_stable(ts(1, 1, 0.5, 0.3, 1, 1, -0.3)));
    EXPECT_EQ(d.kind, LimitKind::LinearDrift);
    EXPECT_EQ(d.drift_sign, -1);
    EXPECT_DOUBLE_EQ(d.rho, 0.0);

    const ZoomClass cp = classify(compound_poisson(0.5, 2.0, JumpDistribution(Atoms{{1.0, -1.0}, {0.5, 0.5}})));
    EXPECT_EQ(cp.kind, LimitKind::LinearDrift);
    EXPECT_EQ(cp.drift_sign, 1);
    EXPECT_DOUBLE_EQ(cp.rho, 1.0);
    EXPECT_EQ(classify(compound_poisson(0.0, 2.0, JumpDistribution::constant(1.0))).kind, LimitKind::NoLimit);
}

TEST(Classify, PositivityRho) {
    EXPECT_DOUBLE_EQ(positivity_rho(2.0, 0.7), 0.5);
    EXPECT_NEAR(positivity_rho(1.5, -1.0), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(positivity_rho(1.5, 1.0), 1.0 / 3.0, 1e-14);
    EXPECT_DOUBLE_EQ(positivity_rho(1.5, 0.0), 0.5);
    EXPECT_NEAR(positivity_rho(0.5, 1.0), 1.0, 1e-14);
    EXPECT_THROW(positivity_rho(1.0, 0.5), Error);
    for (double a : {0.4, 1.3, 1.7}) {
        for (double b : {-1.0, -0.2, 0.6, 1.0}) EXPECT_NEAR(skew_from_rho(a, positivity_rho(a, b)), b, 1e-12);
    }
}

TEST(Classify, PositivityMonteCarlo) {
    const double rho = positivity_rho(1.5, 0.5);
    CounterRng rng(2024, 0);
    const int n = 1000000;
    int pos = 0;
    for (int i = 0; i < n; ++i) pos += sample_stable(1.5, 0.5, 1.0, rng) > 0.0;
    const double se = std::sqrt(rho * (1 - rho) / n);
    EXPECT_NEAR(static_cast<double>(pos) / n, rho, 3 * se);
}

TEST(Classify, ScalingExamples) {
    EXPECT_NEAR(scaling_bn(classify(brownian(0.0, 2.0)), 100), 5.0, 1e-12);
    EXPECT_NEAR(scaling_bn(classify(stable(1.5, 0.0)), 64), 16.0, 1e-10);
    EXPECT_THROW(scaling_bn(classify(gamma_process(1.0, 1.0)), 64), UnsupportedError);
    EXPECT_THROW(scaling_bn(classify(oscillating_model()), 64), UnsupportedError);
}

TEST(Classify, CalibratedCgmyScalingIsFlat) {
    const LevyModel m = composite(0.0, 0.0, tempered_density(ts(1, 1, 1.5, 1.5, 1, 1)));
    const ZoomClass zc = classify(m);
    ASSERT_EQ(zc.kind, LimitKind::Stable);
    ASSERT_TRUE(zc.calibrated);
    double lo = 1e300, hi = 0;
    for (int k = 6; k <= 14; ++k) {
        const double n = std::ldexp(1.0, k);
        const double r = scaling_bn(zc, n) / std::pow(n, 2.0 / 3.0);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    EXPECT_LE(hi / lo - 1.0, 0.02);
}

TEST(Classify, NegationMirrorsRho) {
    const json t = expected_table();
    for (const auto* part : {"rows", "extra"}) {
        for (const auto& row : t[part]) {
            const LevyModel m = load_model_file(oracle::fixture("classifier/" + row["file"].get<std::string>()));
            const ZoomClass a = classify(m);
            if (!a.has_limit()) continue;
            const ZoomClass b = classify(negate(m));
            EXPECT_EQ(a.kind, b.kind) << row["file"];
            EXPECT_NEAR(b.alpha, a.alpha, 1e-9) << row["file"];
            EXPECT_NEAR(b.rho, 1.0 - a.rho, 1e-9) << row["file"];
        }
    }
}

TEST(Classify, SubordinationMultipliesIndices) {
    const LevyModel y = stable(1.5, 0.0);
    const LevyModel s = tempered_stable(ts(1.0, 0.0, 0.7, 0.0, 1.0, 0.0));
    const ZoomClass zy = classify(y), zs = classify(s);
    const ZoomClass z = classify(subordinated(y, s));
    ASSERT_TRUE(z.has_limit());
    EXPECT_NEAR(z.alpha, zy.alpha * zs.alpha, 1e-9);
    EXPECT_NEAR(z.rho, zy.rho, 1e-9);
    const ZoomClass bm = classify(subordinated(brownian(0.0, 1.0), s));
    EXPECT_NEAR(bm.alpha, 2.0 * zs.alpha, 1e-9);
}

TEST(Classify, RhoWithinAdmissibleRange) {
    for (const auto& row : expected_table()["rows"]) {
        const ZoomClass zc = classify(load_model_file(oracle::fixture("classifier/" + row["file"].get<std::string>())));
        if (zc.kind != LimitKind::Stable) continue;
        if (zc.alpha > 1) {
            EXPECT_GE(zc.rho, 1.0 - 1.0 / zc.alpha - 1e-12);
            EXPECT_LE(zc.rho, 1.0 / zc.alpha + 1e-12);
        } else {
            EXPECT_GE(zc.rho, 0.0);
            EXPECT_LE(zc.rho, 1.0);
        }
    }
}

TEST(Classify, SmallTimePositivityMatchesRho) {
    const json t = expected_table();
    for (const char* f : {"cgmy_one_sided_dominant.toml", "cgmy_equal_index.toml", "nig.toml", "subordinated_bm.toml"}) {
        const LevyModel m = load_model_file(oracle::fixture(std::string("classifier/") + f));
        const ZoomClass zc = classify(m);
        const IncrementSampler s(m, 1e-4, SamplerOptions{1e4, 32});
        const int n = 100000;
        int pos = 0;
        for (int i = 0; i < n; ++i) {
            CounterRng rng(77, static_cast<std::uint64_t>(i));
            pos += s.draw(rng) > 0.0;
        }
        const double se = std::sqrt(zc.rho * (1 - zc.rho) / n);
        EXPECT_NEAR(static_cast<double>(pos) / n, zc.rho, 3 * se) << f;
    }
}

TEST(Classify, RescaledIncrementsApproachAttractor) {
    const LevyModel m = load_model_file(oracle::fixture("classifier/cgmy_equal_index.toml"));
    const ZoomClass zc = classify(m);
    ASSERT_TRUE(zc.has_limit());
    const LevyModel hat = attractor_model(zc);
    const int draws = 200000;
    std::vector<double> ref(draws);
    CounterRng rr(11, 0);
    const IncrementSampler hs(hat, 1.0, SamplerOptions{1e4, 32});
    for (auto& v : ref) v = hs.draw(rr) / zc.scale;  // unit-scale representative
    std::vector<double> ks;
    for (int k : {4, 8, 12}) {
        const double n = std::ldexp(1.0, k);
        const double bn = scaling_bn(zc, n);
        const IncrementSampler s(m, 1.0 / n, SamplerOptions{1e4, 32});
        CounterRng r(12, static_cast<std::uint64_t>(k));
        std::vector<double> xs(draws);
        for (auto& v : xs) v = bn * s.draw(r);
        ks.push_back(ks_statistic(xs, ref));
    }
    EXPECT_GT(ks[0], ks[1]);
    EXPECT_GT(ks[1], ks[2]);
}
