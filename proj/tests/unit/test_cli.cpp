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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levysup/error.hpp"
#include "levysup_cli/app.hpp"
#include "oracles.hpp"

using namespace levysup;
using nlohmann::json;

namespace {

cli::ExperimentConfig base(const std::string& kind, const std::string& model) {
    cli::ExperimentConfig c;
    c.kind = kind;
    c.model_file = oracle::fixture("models/" + model);
    c.seed = 5;
    c.reps = 200;
    return c;
}

int invoke(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "levysup");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    return code;
}

std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

}  // namespace

TEST(Cli, NGridParsing) {
    EXPECT_EQ(cli::parse_n_grid("64..4096"), (std::vector<std::size_t>{64, 128, 256, 512, 1024, 2048, 4096}));
    EXPECT_EQ(cli::parse_n_grid("64,256"), (std::vector<std::size_t>{64, 256}));
    EXPECT_THROW(cli::parse_n_grid("60..4096"), ValidationError);
    EXPECT_THROW(cli::parse_n_grid("64,x"), ValidationError);
}

TEST(Cli, Validation) {
    auto c = base("moments", "bm.toml");
    EXPECT_NO_THROW(cli::validate(c));
    c.reps = 99;
    EXPECT_THROW(cli::validate(c), ValidationError);
    c = base("moments", "bm.toml");
    c.seed.reset();
    EXPECT_THROW(cli::validate(c), ValidationError);
    c = base("moments", "bm.toml");
    c.ns = {64, 100};
    EXPECT_THROW(cli::validate(c), ValidationError);
    c.ns = {128, 64};
    EXPECT_THROW(cli::validate(c), ValidationError);
    c = base("classify", "bm.toml");
    c.seed.reset();
    EXPECT_NO_THROW(cli::validate(c));
    c.kind = "plot";
    EXPECT_THROW(cli::validate(c), ValidationError);
}

TEST(Cli, ConfigFileStrictness) {
    const auto c = cli::parse_config("kind = \"moments\"\nmodel = \"bm.toml\"\nn = \"64..256\"\nseed = 3\nreps = 500\n",
                                     "/data");
    EXPECT_EQ(c.model_file, "/data/bm.toml");
    EXPECT_EQ(c.ns.size(), 3u);
    EXPECT_EQ(c.seed.value(), 3u);
    EXPECT_THROW(cli::parse_config("kind = \"moments\"\nrepz = 500\n"), ValidationError);
    EXPECT_THROW(cli::parse_config(R"({"kind": "moments", "bogus": 1})"), ValidationError);
    EXPECT_THROW(cli::parse_config("reps = -4\n"), ValidationError);
}

TEST(Cli, ClassifyNig) {
    const auto a = cli::run(base("classify", "nig.toml"));
    ASSERT_EQ(a.status, cli::ExitCode::Ok) << a.error;
    const json j = json::parse(a.summary);
    EXPECT_EQ(j["zoom_class"]["kind"], "CauchyLimit");
    EXPECT_DOUBLE_EQ(j["zoom_class"]["alpha"].get<double>(), 1.0);
    EXPECT_NEAR(j["zoom_class"]["rho"].get<double>(), 0.5, 1e-12);
    EXPECT_FALSE(j["zoom_class"]["justification"].get<std::string>().empty());
}

TEST(Cli, ExpectBrownian) {
    const auto a = cli::run(base("expect", "bm.toml"));
    ASSERT_EQ(a.status, cli::ExitCode::Ok) << a.error;
    const json j = json::parse(a.summary);
    EXPECT_NEAR(j["correction"]["e_vhat"].get<double>(), 0.58260, 5e-6);
}

TEST(Cli, MomentsStableSlope) {
    auto c = base("moments", "stable15.toml");
    c.ns = cli::parse_n_grid("64..4096");
    c.ps = {1.0};
    c.reps = 1000;
    c.fine_factor = 16;
    const auto a = cli::run(c);
    ASSERT_EQ(a.status, cli::ExitCode::Ok) << a.error;
    const json j = json::parse(a.summary);
    double slope = 0;
    for (const auto& f : j["fits"]) slope = f["slope"];
    EXPECT_NEAR(slope, -2.0 / 3.0, 0.05);
    EXPECT_NE(a.csv.find("moment_unscaled,symmetric_stable_1.5,4096,"), std::string::npos);
    bool has_z = false;
    for (const auto& p : j["predictions"]) has_z = has_z || p.contains("z");
    EXPECT_TRUE(has_z);
}

TEST(Cli, ByteIdenticalReruns) {
    auto c = base("delta", "stable15.toml");
    c.ns = {16, 32, 64, 128};
    c.xs = {0.5, 1.0};
    c.fine_factor = 8;
    c.reps = 2500;
    const auto a = cli::run(c);
    const auto b = cli::run(c);
    c.workers = 3;
    const auto w = cli::run(c);
    ASSERT_EQ(a.status, cli::ExitCode::Ok) << a.error;
    EXPECT_EQ(body(a.csv), body(b.csv));
    EXPECT_EQ(body(a.csv), body(w.csv));
    EXPECT_EQ(a.csv.rfind("# levysup results schema v1\n", 0), 0u);
}

TEST(Cli, SummaryCarriesHashAndVersion) {
    auto c = base("moments", "bm.toml");
    c.ns = {16, 32};
    const json a = json::parse(cli::run(c).summary);
    EXPECT_EQ(a["version"], LEVYSUP_VERSION);
    EXPECT_EQ(a["config_hash"].get<std::string>().size(), 16u);
    c.seed = 6;
    const json b = json::parse(cli::run(c).summary);
    EXPECT_NE(a["config_hash"], b["config_hash"]);
    c.seed = 5;
    c.workers = 2;
    const json w = json::parse(cli::run(c).summary);
    EXPECT_EQ(a["config_hash"], w["config_hash"]);
    EXPECT_EQ(w["workers"], 2);
    EXPECT_EQ(cli::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(cli::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Cli, ExitCodes) {
    auto c = base("moments", "bm.toml");
    c.model_file = "/no/such/model.toml";
    EXPECT_EQ(cli::run(c).status, cli::ExitCode::Validation);
    c = base("moments", "bm.toml");
    c.model_file = oracle::fixture("classifier/gamma.toml");
    EXPECT_EQ(cli::run(c).status, cli::ExitCode::Unsupported);
    c.model_file = oracle::fixture("classifier/oscillating.toml");
    EXPECT_EQ(cli::run(c).status, cli::ExitCode::Unsupported);
    c = base("expect", "nig.toml");
    EXPECT_EQ(cli::run(c).status, cli::ExitCode::Unsupported);
    c = base("cpp", "bm.toml");
    EXPECT_EQ(cli::run(c).status, cli::ExitCode::Unsupported);
}

TEST(Cli, CommandLine) {
    std::string out;
    EXPECT_EQ(invoke({}), 2);
    EXPECT_EQ(invoke({"--help"}), 0);
    EXPECT_EQ(invoke({"run", "classify", oracle::fixture("models/nig.toml")}, &out), 0);
    EXPECT_EQ(json::parse(out)["zoom_class"]["kind"], "CauchyLimit");
    EXPECT_EQ(invoke({"moments", oracle::fixture("models/bm.toml")}), 2);
    EXPECT_EQ(invoke({"moments", oracle::fixture("models/bm.toml"), "--seed", "1", "--reps", "10"}), 2);
    EXPECT_EQ(invoke({"moments", oracle::fixture("classifier/gamma.toml"), "--seed", "1"}), 3);

    const auto dir = std::filesystem::temp_directory_path() / "levysup_cli_test";
    std::filesystem::create_directories(dir);
    const std::string stem = (dir / "bm").string();
    ASSERT_EQ(invoke({"moments", oracle::fixture("models/bm.toml"), "--seed", "3", "--reps", "200", "--n", "16,32",
                      "--out", stem}),
              0);
    EXPECT_TRUE(std::filesystem::exists(stem + ".csv"));
    EXPECT_TRUE(std::filesystem::exists(stem + ".json"));

    const std::string cfg = (dir / "exp.toml").string();
    {
        std::ofstream f(cfg);
        f << "kind = \"expect\"\nmodel = \"" << oracle::fixture("models/stable15.toml") << "\"\n";
    }
    ASSERT_EQ(invoke({"run", cfg}, &out), 0);
    EXPECT_NEAR(json::parse(out)["correction"]["e_vhat"].get<double>(), 0.5228773370, 1e-8);
    std::filesystem::remove_all(dir);
}
