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

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "levysup/jumps.hpp"

namespace levysup {

class LevyModel;

/// gamma t + sigma W_t. `drift` is the Levy-Khintchine gamma (there are no jumps).
struct BrownianWithDrift {
    double drift = 0.0;
    double sigma = 1.0;
};

/// Stable law in the half-scale S1 convention:
///   psi(iu) = i*drift*u - (scale^alpha / 2) |u|^alpha (1 - i*beta*sgn(u)*tan(pi*alpha/2)),  alpha != 1,
///   psi(iu) = i*drift*u - (scale / 2) |u| (1 + i*beta*(2/pi)*sgn(u)*log|u|),                 alpha == 1.
/// With scale 1 the alpha -> 2 limit is a standard Brownian motion, and drift == 0 with
/// alpha != 1 is strictly stable.
struct Stable {
    double alpha = 1.5;
    double beta = 0.0;
    double scale = 1.0;
    double drift = 0.0;
};

/// Levy density c+ x^{-1-a+} e^{-l+ x} on x > 0 and c- |x|^{-1-a-} e^{-l- |x|} on x < 0, no
/// Gaussian part. `drift` is the linear drift gamma' when both sides have bounded variation
/// (effective a+ , a- < 1) and the Levy-Khintchine gamma otherwise.
struct TemperedStable {
    double c_plus = 0.0;
    double c_minus = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double drift = 0.0;
};

/// gamma' t + sum of Poisson(rate) jumps with law `jumps`.
struct CompoundPoissonDrift {
    double drift = 0.0;
    double rate = 0.0;
    JumpDistribution jumps;
};

/// X_t = drift * t + Y_{S_t} with Y = outer and S = inner (a subordinator).
struct Subordinated {
    std::shared_ptr<const LevyModel> outer;
    std::shared_ptr<const LevyModel> inner;
    double drift = 0.0;
};

/// Levy density on each half-line, evaluated at |x| > 0.
///
/// `power_zero` and `power_inf` are declared envelope indices: the density behaves like
/// |x|^{-1-power_zero} near 0 and is dominated by |x|^{-1-power_inf} at infinity
/// (power_inf = inf for exponential decay). Quadrature uses them to size its remainders.
struct LevyDensity {
    std::function<double(double)> plus;
    std::function<double(double)> minus;
    /// Optional x^2 times the density, used near 0 where the density itself may overflow.
    std::function<double(double)> plus_x2;
    std::function<double(double)> minus_x2;
    /// Points |x| where the density is not smooth; quadrature splits there.
    std::vector<double> breaks;
    double power_zero = 1.0;
    double power_inf = std::numeric_limits<double>::infinity();
    std::string label;
};

/// Generic triplet (gamma, sigma, Pi) with Pi given by a density.
struct Composite {
    double gamma = 0.0;
    double sigma = 0.0;
    std::shared_ptr<const LevyDensity> density;
};

/// Immutable Levy process description. Construction validates the triplet.
class LevyModel {
public:
    using Family = std::variant<BrownianWithDrift, Stable, TemperedStable, CompoundPoissonDrift,
                                Subordinated, Composite>;

    explicit LevyModel(Family family, std::string name = {});

    const Family& family() const noexcept { return family_; }
    const std::string& name() const noexcept { return name_; }
    LevyModel renamed(std::string name) const;

    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(&family_);
    }

    /// Short identifier of the family ("brownian", "stable", ...).
    std::string family_name() const;

private:
    Family family_;
    std::string name_;
};

LevyModel brownian(double drift, double sigma, std::string name = "brownian");
LevyModel stable(double alpha, double beta, double scale = 1.0, double drift = 0.0,
                 std::string name = "stable");
LevyModel tempered_stable(const TemperedStable& p, std::string name = "tempered_stable");
LevyModel compound_poisson(double drift, double rate, JumpDistribution jumps,
                           std::string name = "compound_poisson");
LevyModel subordinated(LevyModel outer, LevyModel inner, double drift = 0.0,
                       std::string name = "subordinated");
LevyModel composite(double gamma, double sigma, LevyDensity density,
                    std::string name = "composite");

/// Normal inverse Gaussian NIG(alpha, beta, delta, mu) as Brownian motion with drift beta
/// subordinated by the inverse Gaussian subordinator with Laplace exponent
/// delta * (sqrt(alpha^2 - beta^2 + 2q) - sqrt(alpha^2 - beta^2)), plus drift mu.
LevyModel normal_inverse_gaussian(double alpha, double beta, double delta, double mu = 0.0,
                                  std::string name = "nig");

/// Gamma subordinator with Levy density shape * x^{-1} e^{-rate x}.
LevyModel gamma_process(double shape, double rate, std::string name = "gamma");

/// Difference of independent gamma processes (driftless variance gamma).
LevyModel variance_gamma(double c, double lambda_plus, double lambda_minus,
                         std::string name = "variance_gamma");

/// Composite density equal to a tempered stable measure (for cross-checks).
LevyDensity tempered_density(const TemperedStable& p);

/// Counterexample measure with tails (1 + u(x))/x and 1/x below h,
/// u(x) = sin(log(-log x)) / log x, continued by exponential tails above h.
/// The returned gamma makes m(x) = -u(x) - cos(log(-log x)) for x < h.
struct OscillatingExample {
    LevyDensity density;
    double gamma;
    double h;
};
OscillatingExample oscillating_example(double h = 0.05);
LevyModel oscillating_model(double h = 0.05, std::string name = "oscillating");

/// Mirror image -X.
LevyModel negate(const LevyModel& model);

}  // namespace levysup
