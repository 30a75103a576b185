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
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace levysup::cli {

enum class ExitCode : int { Ok = 0, Internal = 1, Validation = 2, Unsupported = 3 };

/// One experiment. `model_file` is resolved relative to the working directory (or to the
/// config file when read with load_config).
struct ExperimentConfig {
    std::string kind;  ///< classify | expect | moments | delta | cpp | tails | rates
    std::string model_file;
    std::vector<std::size_t> ns{64, 128, 256, 512, 1024};
    std::vector<double> xs{1.0};
    std::vector<double> ps{1.0};
    std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
    std::uint64_t reps = 10000;
    std::size_t fine_factor = 64;
    std::size_t resolution = 16384;  ///< steps per unit time for `tails`
    double shift = 0.0;
    std::string quantity = "moment";  ///< `rates`: moment | delta
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::string out;  ///< output stem; writes <out>.csv and <out>.json
};

bool needs_seed(const std::string& kind);

/// "64..4096" (dyadic range) or "64,128,256".
std::vector<std::size_t> parse_n_grid(const std::string& text);

/// Reads an experiment from TOML (or JSON when the text starts with '{'). Unknown keys are
/// validation errors.
ExperimentConfig parse_config(const std::string& text, const std::string& base_dir = "");
ExperimentConfig load_config(const std::string& path);

/// Throws ValidationError on reps < 100, a missing seed, a non-dyadic or unsorted n-grid.
void validate(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& bytes);

struct Artifacts {
    ExitCode status = ExitCode::Ok;
    std::string summary;  ///< JSON
    std::string csv;
    std::string error;
};

/// Runs one experiment. Never throws; errors map to the exit status.
Artifacts run(const ExperimentConfig& cfg);

/// Command line entry point.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levysup::cli
