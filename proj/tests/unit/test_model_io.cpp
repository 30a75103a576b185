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

#include "levysup/error.hpp"
#include "levysup/measure.hpp"
#include "levysup/model_io.hpp"
#include "oracles.hpp"

using namespace levysup;

TEST(ModelIo, TomlAndJsonAgree) {
    const LevyModel a = parse_model("family = \"stable\"\nalpha = 1.5\nbeta = 0.25\nscale = 2.0\n");
    const LevyModel b = parse_model(R"({"family": "stable", "alpha": 1.5, "beta": 0.25, "scale": 2.0})");
    ASSERT_NE(a.as<Stable>(), nullptr);
    EXPECT_EQ(model_to_json(a), model_to_json(b));
    EXPECT_DOUBLE_EQ(a.as<Stable>()->scale, 2.0);
}

TEST(ModelIo, UnknownKeysAreErrors) {
    EXPECT_THROW(parse_model("family = \"brownian\"\nsigma = 1.0\nsigmaa = 2.0\n"), ValidationError);
    EXPECT_THROW(parse_model(R"({"family": "gamma", "shape": 1, "rate": 1, "extra": 0})"), ValidationError);
    EXPECT_THROW(parse_model("family = \"nope\"\n"), ValidationError);
    EXPECT_THROW(parse_model("this is not toml ["), ValidationError);
}

TEST(ModelIo, MissingFile) {
    EXPECT_THROW(load_model_file("/nonexistent/model.toml"), ValidationError);
}

TEST(ModelIo, FixturesLoad) {
    for (const char* f : {"models/bm.toml", "models/nig.toml", "models/stable15.toml", "models/cpp.toml",
                          "classifier/subordinated_bm.toml", "classifier/oscillating.toml"}) {
        EXPECT_NO_THROW(load_model_file(oracle::fixture(f))) << f;
    }
    const LevyModel cp = load_model_file(oracle::fixture("models/cpp.toml"));
    const auto* c = cp.as<CompoundPoissonDrift>();
    ASSERT_NE(c, nullptr);
    EXPECT_DOUBLE_EQ(c->rate, 2.0);
    EXPECT_DOUBLE_EQ(c->drift, 0.5);
}

TEST(ModelIo, CgmyKeysMapToTemperedStable) {
    const LevyModel m = parse_model("family = \"cgmy\"\nC = 1.0\nG = 2.0\nM = 3.0\nY = 1.5\n");
    const auto* t = m.as<TemperedStable>();
    ASSERT_NE(t, nullptr);
    EXPECT_DOUBLE_EQ(t->lambda_minus, 2.0);
    EXPECT_DOUBLE_EQ(t->lambda_plus, 3.0);
    EXPECT_DOUBLE_EQ(t->alpha_plus, 1.5);
    EXPECT_DOUBLE_EQ(t->alpha_minus, 1.5);
}

TEST(ModelIo, RoundTripThroughJson) {
    for (const char* text : {"family = \"brownian\"\ndrift = 0.2\nsigma = 3.0\n",
                             "family = \"tempered_stable\"\nc_plus = 1.0\nc_minus = 0.5\nalpha_plus = 1.2\n"
                             "alpha_minus = 0.8\nlambda_plus = 1.0\nlambda_minus = 2.0\n",
                             "family = \"compound_poisson\"\nrate = 1.5\njumps = { kind = \"double_exponential\", "
                             "p_up = 0.3, rate_up = 2.0, rate_down = 1.0 }\n"}) {
        const LevyModel m = parse_model(text);
        const LevyModel r = parse_model(model_to_json(m));
        EXPECT_EQ(model_to_json(m), model_to_json(r));
        EXPECT_NEAR(std::abs(char_exponent(m, 1.7) - char_exponent(r, 1.7)), 0.0, 1e-14);
    }
}
