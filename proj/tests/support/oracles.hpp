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

#include <cmath>
#include <cstddef>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

namespace levysup::oracle {

inline std::string fixture(const std::string& rel) { return std::string(LEVYSUP_FIXTURES) + "/" + rel; }

/// E max(X, 0) of a strictly stable law with psi(iu) = -A |u|^alpha (1 - i b sgn u), from the
/// Mellin transform of the positive half: s Gamma(1 - 1/alpha) sin(pi rho) / pi,
/// s = (A sqrt(1 + b^2))^{1/alpha}, rho = 1/2 + atan(b) / (pi alpha).
inline double stable_positive_part_mellin(double alpha, double beta, double scale) {
    const double pi = 3.14159265358979323846;
    const double a = 0.5 * std::pow(scale, alpha);
    const double b = beta * std::tan(pi * alpha / 2.0);
    const double rho = 0.5 + std::atan(b) / (pi * alpha);
    const double s = std::pow(a * std::sqrt(1.0 + b * b), 1.0 / alpha);
    return s * boost::math::tgamma(1.0 - 1.0 / alpha) * std::sin(pi * rho) / pi;
}

/// sqrt(n) E(M - M^(n)) for standard Brownian motion, by Spitzer's identity
/// E M^(n) = sum_{k<=n} E (S_k)^+ / k with S_k ~ N(0, k / n).
inline double brownian_scaled_gap(std::size_t n) {
    const double pi = 3.14159265358979323846;
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) sum += 1.0 / std::sqrt(static_cast<double>(k));
    const double rn = std::sqrt(static_cast<double>(n));
    return rn * std::sqrt(2.0 / pi) - sum / std::sqrt(2.0 * pi);
}

/// -zeta(1/2) / sqrt(2 pi) through Boost.
inline double brownian_vhat() {
    return -boost::math::zeta(0.5) / std::sqrt(2.0 * 3.14159265358979323846);
}

inline double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846); }
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace levysup::oracle
