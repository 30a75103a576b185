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
#include <functional>
#include <string>
#include <vector>

#include "levysup/classify.hpp"
#include "levysup/model.hpp"
#include "levysup/simulate.hpp"

namespace levysup {

/// Streaming mean and variance (Chan et al. merge), deterministic for a fixed merge order.
struct RunningStat {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    void merge(const RunningStat& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(count + o.count);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.count) / n;
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
        count += o.count;
    }
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

struct MCResult {
    double estimate = 0.0;
    double std_err = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::string tag;
};

MCResult make_result(const RunningStat& s, std::uint64_t seed, std::string tag);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double slope_ci_low = 0.0;
    double slope_ci_high = 0.0;
    double r2 = 0.0;
    std::vector<double> grid;
};

/// Weighted least squares of log y on log x with weights (y / se)^2. Needs >= 4 strictly
/// increasing x and positive y.
RateFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& se);

struct RunConfig {
    std::uint64_t reps = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::size_t fine_factor = 64;
    double shift = 0.0;
    SimOptions sim{};
};

struct MomentRow {
    std::size_t n = 0;
    double bn = 0.0;
    MCResult scaled;     ///< E (V^(n))^p
    MCResult excluded;   ///< E (V^(n))^p 1{A^(n) does not occur}
    MCResult unscaled;   ///< E (M - M^(n))^p
};

struct MomentStudy {
    double p = 1.0;
    std::vector<MomentRow> rows;
    MCResult tau_interior;  ///< P(tau_fine in (0, 1))
    std::string engine;
    bool exact_supremum = false;
    bool tracks_big_jumps = false;
    std::string warning;
};

/// E (V^(n))^p for every n in `ns` on common paths. b_n from `zc` (scale 1 when zc has no limit,
/// in which case only `unscaled` is meaningful).
MomentStudy moment_error(const LevyModel& model, const ZoomClass& zc, double p,
                         const std::vector<std::size_t>& ns, const RunConfig& cfg);

struct DeltaRow {
    std::size_t n = 0;
    double x = 0.0;
    double bn = 0.0;
    MCResult delta;        ///< P(M > x, M^(n) <= x)
    MCResult scaled;       ///< b_n * delta
    MCResult exceed;       ///< P(M > x)
};

std::vector<DeltaRow> delta_probability(const LevyModel& model, const ZoomClass& zc,
                                        const std::vector<double>& xs,
                                        const std::vector<std::size_t>& ns, const RunConfig& cfg);

struct DensityRow {
    double x = 0.0;
    double bandwidth = 0.0;
    MCResult estimate;
    MCResult half_bandwidth;  ///< same estimator at bandwidth / 2
};

/// Kernel density of M (Gaussian kernel, Silverman bandwidth, reflected at 0) from fine-grid
/// suprema on `resolution` steps.
std::vector<DensityRow> density_at(const LevyModel& model, const std::vector<double>& xs,
                                   std::size_t resolution, const RunConfig& cfg);

struct CppLimit {
    MCResult rhs;           ///< |gamma'|/2 P(tau in (0,1)) + I/2
    MCResult tau_interior;  ///< P(tau in (0,1))
    MCResult integral;      ///< I
};

/// Right-hand side of the compound Poisson limit of n E(M - M^(n)), with
/// I = lambda^2 E((J1 + inf_{t<=U} X_t) ^ (-J2 - sup_{t<=1-U} X'_t))^+.
CppLimit cpp_limit_rhs(const LevyModel& model, const RunConfig& cfg);

struct ProbPoint {
    double eps = 0.0;
    MCResult prob;
};

/// Weighted log-log slope of probabilities that vary regularly in eps.
RateFit tail_index(const std::vector<ProbPoint>& points);
RateFit tail_index(const std::function<MCResult(double)>& sampler, const std::vector<double>& eps);

struct SmallTimeTails {
    std::vector<ProbPoint> tau_below;  ///< P(tau <= eps)
    std::vector<ProbPoint> sup_below;  ///< P(M <= eps)
    std::string engine;
};

/// P(tau <= eps) and P(M <= eps) from paths on `resolution` steps.
SmallTimeTails small_time_tails(const LevyModel& model, const std::vector<double>& eps,
                                std::size_t resolution, const RunConfig& cfg);

/// P(X_eps > 0) from direct increments.
std::vector<ProbPoint> positivity(const LevyModel& model, const std::vector<double>& eps,
                                  const RunConfig& cfg);

enum class RateQuantity { Moment, Delta };

struct RateStudy {
    RateFit fit;
    std::vector<std::size_t> ns;
    std::vector<MCResult> values;  ///< E(M - M^(n))^p or Delta_n(x)
};

/// Slope of log E(M - M^(n))^p (or log Delta_n(x)) against log n.
RateStudy rate_fit(const LevyModel& model, RateQuantity quantity, const std::vector<std::size_t>& ns,
                   double p_or_x, const RunConfig& cfg);

}  // namespace levysup
