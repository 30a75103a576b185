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

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "levysup/model.hpp"

namespace levysup {

enum class LimitKind { Brownian, LinearDrift, Stable, Cauchy, NoLimit, Undetermined };

std::string to_string(LimitKind kind);

/// Numerical evidence behind a tail-ratio decision, sampled at x = 10^-k.
struct TailEvidence {
    std::vector<double> x;
    std::vector<double> tail_plus;
    std::vector<double> tail_minus;
    std::vector<double> ratio;         ///< tail_plus / tail_minus
    std::vector<double> index;         ///< log10 Pi(x_{k+1}) / Pi(x_k), one fewer entry
    std::vector<double> drift_ratio;   ///< m(x) / (x Pi(x)), only for the alpha = 1 equal-tail case
};

/// Zooming-in attractor of a Levy model.
///
/// The attractor is X^ = scale * (unit representative):
///   Brownian     sigma^ = scale,
///   LinearDrift  slope  = drift_sign * scale,
///   Stable       half-scale S1 parameter = scale, skewness `skew`,
///   Cauchy       half-scale = scale, drift `cauchy_drift`.
/// b_n = n^{1/alpha} / scale unless `calibrated`, in which case b_n = 1 / a_{1/n} is solved from
/// the truncated characteristics of `source`.
struct ZoomClass {
    LimitKind kind = LimitKind::Undetermined;
    int drift_sign = 0;
    double alpha = 0.0;
    double rho = 0.5;
    double scale = 1.0;
    double skew = 0.0;
    double cauchy_drift = 0.0;
    bool calibrated = false;
    std::shared_ptr<const LevyModel> source;
    std::string rule;
    std::string justification;
    std::string reason;  ///< why the class is NoLimit / Undetermined
    TailEvidence evidence;

    bool has_limit() const { return kind != LimitKind::NoLimit && kind != LimitKind::Undetermined; }
};

ZoomClass classify(const LevyModel& model);

/// P(X^_1 > 0) for a strictly stable law with index alpha and skewness beta (S1).
double positivity_rho(double alpha, double beta);

/// Skewness beta for which positivity_rho(alpha, beta) == rho, alpha != 1.
double skew_from_rho(double alpha, double rho);

/// b_n for the unit-scale attractor.
double scaling_bn(const ZoomClass& zc, double n);

/// psi of the attractor (not the unit representative) at theta on the imaginary axis, or at
/// Re(theta) <= 0 for subordinator attractors.
std::complex<double> attractor_exponent(const ZoomClass& zc, std::complex<double> theta);

/// Attractor as a model (scale included), for sampling X^_1.
LevyModel attractor_model(const ZoomClass& zc);

}  // namespace levysup
