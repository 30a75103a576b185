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

#include <string>

#include "levysup/model.hpp"

namespace levysup {

enum class ModelFormat { Auto, Toml, Json };

/// Parses one model document. Unknown keys are validation errors.
///
/// Families and keys (defaults in parentheses):
///   brownian          drift (0), sigma (1)
///   stable            alpha, beta (0), scale (1), drift (0)
///   tempered_stable   c_plus, c_minus, alpha_plus, alpha_minus, lambda_plus, lambda_minus (all 0), drift (0)
///   cgmy              C, G, M, Y, drift (0)
///   compound_poisson  drift (0), rate, jumps = { kind = atoms|double_exponential|pareto|normal, ... }
///   nig               alpha, beta (0), delta, mu (0)
///   gamma             shape, rate
///   variance_gamma    c, lambda_plus, lambda_minus
///   subordinated      outer = {model}, inner = {model}, drift (0)
///   oscillating       h (0.05)
///   composite_tempered  the tempered_stable keys, evaluated through the generic density route
/// Every document may carry `name`. With ModelFormat::Auto, text starting with '{' is JSON.
LevyModel parse_model(const std::string& text, ModelFormat format = ModelFormat::Auto);

/// Reads a model file; the extension (.toml / .json) selects the format.
LevyModel load_model_file(const std::string& path);

/// JSON description of a model (family and parameters).
std::string model_to_json(const LevyModel& model);

}  // namespace levysup
