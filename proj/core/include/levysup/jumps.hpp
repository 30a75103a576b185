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
#include <limits>
#include <variant>
#include <vector>

namespace levysup {

class CounterRng;

/// Jump-size law of a compound Poisson component.
///
/// Every alternative is a probability distribution on R \ {0}; the jump
/// intensity lives in the owning model.
struct Atoms {
    std::vector<double> values;
    std::vector<double> probs;
};

/// Kou-style double exponential: up-jumps Exp(rate_up) with probability p_up,
/// otherwise down-jumps -Exp(rate_down).
struct DoubleExponential {
    double p_up = 0.5;
    double rate_up = 1.0;
    double rate_down = 1.0;
};

/// |J| ~ Pareto(shape, scale) on [scale, inf), sign + with probability p_up.
struct Pareto {
    double shape = 1.5;
    double scale = 1.0;
    double p_up = 1.0;
};

struct NormalJumps {
    double mean = 0.0;
    double sd = 1.0;
};

class JumpDistribution {
public:
    using Law = std::variant<Atoms, DoubleExponential, Pareto, NormalJumps>;

    JumpDistribution() : law_(Atoms{{1.0}, {1.0}}) {}
    explicit JumpDistribution(Law law);

    static JumpDistribution constant(double value) { return JumpDistribution(Atoms{{value}, {1.0}}); }

    const Law& law() const noexcept { return law_; }

    /// P(J > x), x >= 0.
    double prob_above(double x) const;
    /// P(J < -x), x >= 0.
    double prob_below(double x) const;
    /// E[J; lo < |J| < hi] (signed), 0 <= lo <= hi.
    double partial_mean(double lo, double hi) const;
    /// E[J^2; |J| < x].
    double partial_second_moment(double x) const;
    /// E[|J|^p; |J| > 1]; +inf when divergent.
    double large_abs_moment(double p) const;
    /// sup{p : E|J|^p < inf}.
    double moment_index() const;
    /// E exp(theta J) for theta on the imaginary axis, or Re(theta) <= 0 when J >= 0.
    std::complex<double> mgf(std::complex<double> theta) const;

    bool has_positive() const;
    bool has_negative() const;

    double sample(CounterRng& rng) const;
    JumpDistribution negated() const;

private:
    Law law_;
};

}  // namespace levysup
