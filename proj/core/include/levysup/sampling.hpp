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

#include <memory>
#include <string>
#include <vector>

#include "levysup/model.hpp"
#include "levysup/rng.hpp"

namespace levysup {

/// How increments of a model are produced.
struct SamplerInfo {
    bool exact = true;             ///< false when small jumps are replaced by a Gaussian
    bool tracks_big_jumps = false; ///< offsets of jumps with |J| > 1 are reported
    std::string method;
    double threshold = 0.0;        ///< small-jump cutoff h (threshold methods)
    double jump_rate = 0.0;        ///< intensity of the simulated jumps above h
    /// sigma(h) / h, the validity proxy of the Gaussian small-jump approximation.
    double gaussian_ratio = 0.0;
};

struct SamplerOptions {
    /// Upper limit on the rate of explicitly simulated jumps per unit time...
    double max_jump_rate = 1e4;
    /// ...unless the step is so short that fewer than this many jumps per step would be kept.
    double min_jumps_per_step = 1.0;
};

/// Draws of X_dt for a fixed model and step.
class IncrementSampler {
public:
    IncrementSampler(const LevyModel& model, double dt, SamplerOptions options = {});
    ~IncrementSampler();
    IncrementSampler(IncrementSampler&&) noexcept;
    IncrementSampler& operator=(IncrementSampler&&) noexcept;

    double draw(CounterRng& rng) const { return draw(rng, nullptr); }
    /// When `big_jumps` is non-null and the method tracks jumps, the time offsets in [0, dt)
    /// of jumps with |J| > 1 are appended to it.
    double draw(CounterRng& rng, std::vector<double>* big_jumps) const;

    double dt() const noexcept { return dt_; }
    const SamplerInfo& info() const noexcept { return info_; }

    struct Impl;

private:
    double dt_;
    SamplerInfo info_;
    std::unique_ptr<Impl> impl_;
};

/// One increment X_dt. Builds a sampler each call; use IncrementSampler in loops.
double sample_increment(const LevyModel& model, double dt, CounterRng& rng,
                        SamplerInfo* info = nullptr);

/// Stable variate with characteristic exponent of X_1 in the half-scale S1 convention, drift 0
/// (Chambers-Mallows-Stuck).
double sample_stable(double alpha, double beta, double scale, CounterRng& rng);

/// X_t of the half-scale S1 stable process with the given drift.
double sample_stable_at(double alpha, double beta, double scale, double drift, double t,
                        CounterRng& rng);

/// Gamma(shape, rate); returns 0 only when the variate underflows.
double sample_gamma(double shape, double rate, CounterRng& rng);

/// Inverse Gaussian with the given mean and shape (Michael-Schucany-Haas).
double sample_inverse_gaussian(double mean, double shape, CounterRng& rng);

long sample_poisson(double mean, CounterRng& rng);

}  // namespace levysup
