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

#include "levysup/model.hpp"

namespace levysup {

/// Levy-Khintchine exponent psi(theta) with E exp(theta X_t) = exp(t psi(theta)).
/// theta must lie on the imaginary axis, or have Re(theta) <= 0 for subordinators.
std::complex<double> exponent(const LevyModel& model, std::complex<double> theta);

/// psi(iu).
std::complex<double> char_exponent(const LevyModel& model, double u);

/// Pi(x, inf) and Pi(-inf, -x) for x > 0.
double tail_plus(const LevyModel& model, double x);
double tail_minus(const LevyModel& model, double x);
inline double tail(const LevyModel& model, double x) {
    return tail_plus(model, x) + tail_minus(model, x);
}

/// m(x) = gamma - int_{x<|y|<1} y Pi(dy), 0 < x < 1.
double truncated_mean(const LevyModel& model, double x);

/// v(x) = sigma^2 + int_{|y|<x} y^2 Pi(dy), 0 < x < 1.
double truncated_variance(const LevyModel& model, double x);

/// Levy-Khintchine drift gamma (truncation at |x| = 1).
double lk_gamma(const LevyModel& model);

/// Gaussian coefficient of X.
double gaussian_sigma(const LevyModel& model);

/// sigma == 0 and int_{|x|<1} |x| Pi(dx) < inf.
bool bounded_variation(const LevyModel& model);

/// gamma' = gamma - int_{|x|<1} x Pi(dx); defined for bounded variation only.
double linear_drift(const LevyModel& model);

/// Non-decreasing paths: bounded variation, no negative jumps, gamma' >= 0.
bool is_subordinator(const LevyModel& model);

/// int (x^2 ^ 1) Pi(dx).
double levy_mass(const LevyModel& model);

struct DiagnosticIndices {
    double beta0 = 0.0;     ///< Blumenthal-Getoor index of small jumps, in [0, 2]
    double beta_inf = 0.0;  ///< integrability index of big jumps, in [0, inf]
    double alpha = 0.0;     ///< 2 if sigma != 0, 1 if b.v. with gamma' != 0, beta0 otherwise
};

DiagnosticIndices indices(const LevyModel& model);

namespace detail {
/// Tempered stable parameters (lambda = 0) with the same triplet as a stable law.
TemperedStable stable_as_tempered(const Stable& s);

/// Composite triplet equivalent to a subordinated Brownian motion (numerical Levy density
/// obtained by integrating the Gaussian kernel against the subordinator's Levy measure).
Composite subordinated_view(const Subordinated& s);
}  // namespace detail

}  // namespace levysup
