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
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "levysup/classify.hpp"
#include "levysup/model.hpp"
#include "levysup/rng.hpp"
#include "levysup/sampling.hpp"

namespace levysup {

/// Coarse grid {(i + shift)/n} within [0, 1] and a fine grid of n * fine_factor steps.
struct GridSpec {
    std::size_t n = 64;
    double shift = 0.0;
    std::size_t fine_factor = 64;
};

struct PathGrid {
    std::vector<double> times;
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

struct ErrorSample {
    double m_fine = 0.0;
    double m_coarse = 0.0;
    double tau_fine = 0.0;
    double v_n = 0.0;
    bool excluded = false;  ///< the event A^(n): big jumps closer than 1/n to each other or to 0, 1
};

enum class Engine {
    Auto,      ///< exact engines where available, fine grid otherwise
    FineGrid,  ///< always the fine grid of n_max * K steps
};

struct SimOptions {
    Engine engine = Engine::Auto;
    /// Brownian-bridge maxima on fine steps of a Brownian model (m_fine only).
    bool bridge = true;
    SamplerOptions sampler{};
};

/// One path observed on every coarse grid of a CoupledSimulator.
struct CoupledDraw {
    double m_fine = 0.0;
    double tau_fine = 0.0;
    double x_end = 0.0;
    /// Smallest spacing between consecutive elements of {0, big-jump times, 1}.
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<double> m_coarse;
};

/// Common-random-number simulation of M and M^(n) for several n sharing one path.
///
/// Engines: Brownian models use exact Gaussian grid values with Brownian-bridge maxima, so
/// m_fine is the exact supremum; compound Poisson with drift is simulated event by event and
/// is exact; everything else runs on a fine grid of max(ns) * K increments.
class CoupledSimulator {
public:
    CoupledSimulator(const LevyModel& model, std::vector<std::size_t> ns, std::size_t fine_factor,
                     double shift = 0.0, SimOptions options = {});
    ~CoupledSimulator();
    CoupledSimulator(CoupledSimulator&&) noexcept;

    void draw(CounterRng& rng, CoupledDraw& out) const;
    CoupledDraw draw(CounterRng& rng) const;

    ErrorSample error_sample(const CoupledDraw& d, std::size_t index, double bn) const;

    const std::vector<std::size_t>& ns() const noexcept { return ns_; }
    std::size_t fine_steps() const noexcept { return fine_steps_; }
    double shift() const noexcept { return shift_; }
    const std::string& engine() const noexcept { return engine_; }
    bool exact_supremum() const noexcept { return exact_sup_; }
    bool tracks_big_jumps() const noexcept { return tracks_; }
    const SamplerInfo& sampler_info() const noexcept { return info_; }

    struct Impl;

private:
    std::vector<std::size_t> ns_;
    std::size_t fine_steps_ = 0;
    double shift_ = 0.0;
    std::string engine_;
    bool exact_sup_ = false;
    bool tracks_ = false;
    SamplerInfo info_;
    std::unique_ptr<Impl> impl_;
};

/// One coupled coarse/fine draw for a single grid, scaled by b_n of `zc`.
ErrorSample simulate_pair(const LevyModel& model, const GridSpec& grid, const ZoomClass& zc,
                          CounterRng& rng, SimOptions options = {});
/// Same with a caller-supplied b_n.
ErrorSample simulate_pair(const LevyModel& model, const GridSpec& grid, double bn,
                          CounterRng& rng, SimOptions options = {});

/// Path on the uniform grid of `steps` steps over [0, 1].
PathGrid simulate_path(const LevyModel& model, std::size_t steps, CounterRng& rng,
                       SamplerOptions options = {});

/// M^(n) <= M^(2n) <= M^(4n) <= max over the path, on one path of 4 n K steps.
bool nested_refinement_check(const LevyModel& model, std::size_t n, std::size_t fine_factor,
                             CounterRng& rng);

/// Max over the points (i + shift) * stride of `values` (stride = steps per coarse interval).
double grid_max(const std::vector<double>& values, std::size_t stride, std::size_t offset = 0);

/// Columnar dump: a comment header, then "path,time,value" rows.
void write_path_csv(std::ostream& os, const std::vector<PathGrid>& paths);

}  // namespace levysup
