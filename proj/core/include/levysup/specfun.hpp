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

#include "levysup/classify.hpp"

namespace levysup {

/// Dirichlet eta function sum_{k>=1} (-1)^{k-1} k^{-s}, by Borwein's accelerated alternating sum.
double dirichlet_eta(double s);

/// Riemann zeta through eta(s) / (1 - 2^{1-s}). Accurate to about 1e-12 on [-2, 0.9] and
/// [1.1, 10]; throws PoleError at s == 1.
double zeta(double s);

/// E max(X_1, 0) for the strictly stable law with index alpha in (1, 2], positivity rho and
/// half-scale S1 parameter `scale` (alpha == 2 is N(0, scale^2)).
double expected_positive_part(double alpha, double rho, double scale = 1.0);

/// E|X_1| for the same law.
double expected_abs(double alpha, double rho, double scale = 1.0);

/// Asymptotic constants of the discretization error.
///
/// e_pos and e_vhat refer to the attractor itself (scale included). b_n normalizes to the
/// unit-scale representative, so E V^(n) -> e_vhat_unit * P(tau in (0,1)).
struct Correction {
    double alpha = 0.0;
    double rho = 0.5;
    double scale = 1.0;
    double zeta_value = 0.0;
    double e_pos = 0.0;
    double e_vhat = 0.0;
    double e_pos_unit = 0.0;
    double e_vhat_unit = 0.0;
    std::string convention;
};

/// E V^ = -zeta((alpha - 1)/alpha) E X^_1^+ for Brownian and stable attractors with alpha > 1.
Correction expected_vhat(const ZoomClass& zc);

/// Density of sup_{t<=1} (mu t + sigma W_t) at x > 0.
double brownian_sup_density(double x, double mu = 0.0, double sigma = 1.0);

/// P(sup_{t<=1} (mu t + sigma W_t) <= x), x >= 0.
double brownian_sup_cdf(double x, double mu = 0.0, double sigma = 1.0);

}  // namespace levysup
