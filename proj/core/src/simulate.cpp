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
#include "levysup/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "levysup/error.hpp"
#include "levysup/measure.hpp"

namespace levysup {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t lattice_offset(double shift, std::size_t stride) {
    const double o = shift * static_cast<double>(stride);
    const double r = std::round(o);
    if (std::abs(o - r) > 1e-9 * std::max(1.0, o)) {
        throw GridSpecError("shift " + std::to_string(shift) + " is not on the fine lattice of " +
                            std::to_string(stride) + " steps per coarse interval");
    }
    return static_cast<std::size_t>(r);
}

// Tracks consecutive big-jump times and the smallest gap, endpoints included.
struct GapTracker {
    double last = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    bool any = false;
    void add(double t) {
        min_gap = std::min(min_gap, t - last);
        last = t;
        any = true;
    }
    double finish() {
        if (!any) return std::numeric_limits<double>::infinity();
        return std::min(min_gap, 1.0 - last);
    }
};

}  // namespace

struct CoupledSimulator::Impl {
    enum class Kind { Bridge, Events, Fine } kind = Kind::Fine;
    std::size_t steps = 0;  // simulation steps (Bridge, Fine)
    std::vector<std::size_t> stride, offset;
    double shift = 0.0;
    // Brownian parameters (Bridge, or Fine with bridge maxima)
    double mu = 0.0, sigma = 0.0;
    bool bridge = false;
    // Compound Poisson (Events)
    double cp_drift = 0.0, cp_rate = 0.0;
    JumpDistribution jumps;
    std::unique_ptr<IncrementSampler> sampler;

    void start_coarse(CoupledDraw& out, std::vector<std::size_t>& next, std::size_t& next_min) const {
        const std::size_t m = stride.size();
        out.m_coarse.assign(m, kNegInf);
        next.resize(m);
        next_min = steps + 1;
        for (std::size_t q = 0; q < m; ++q) {
            if (offset[q] == 0) {
                out.m_coarse[q] = 0.0;
                next[q] = stride[q];
            } else {
                next[q] = offset[q];
            }
            next_min = std::min(next_min, next[q]);
        }
    }

    static void visit_coarse(CoupledDraw& out, std::vector<std::size_t>& next, std::size_t& next_min,
                             const std::vector<std::size_t>& stride, std::size_t j, double x) {
        next_min = std::numeric_limits<std::size_t>::max();
        for (std::size_t q = 0; q < next.size(); ++q) {
            if (next[q] == j) {
                out.m_coarse[q] = std::max(out.m_coarse[q], x);
                next[q] += stride[q];
            }
            next_min = std::min(next_min, next[q]);
        }
    }

    void draw_grid(CounterRng& rng, CoupledDraw& out) const {
        std::vector<std::size_t> next;
        std::size_t next_min = 0;
        start_coarse(out, next, next_min);
        const double dt = 1.0 / static_cast<double>(steps);
        const double sd = sigma * std::sqrt(dt), mean = mu * dt;
        const double two_var = 2.0 * sigma * sigma * dt;
        double x = 0.0, best = 0.0;
        std::size_t arg = 0;
        bool interior = false;  // bridge maxima sit inside their step
        GapTracker gaps;
        std::vector<double> big;
        for (std::size_t j = 1; j <= steps; ++j) {
            const double prev = x;
            if (kind == Kind::Bridge) {
                x = prev + mean + sd * rng.normal();
            } else {
                big.clear();
                x = prev + sampler->draw(rng, &big);
                if (!big.empty()) {
                    std::sort(big.begin(), big.end());
                    for (double off : big) gaps.add((static_cast<double>(j - 1) + off / dt) * dt);
                }
            }
            if (bridge) {
                const double d = x - prev;
                double top = 0.5 * (prev + x + std::sqrt(d * d - two_var * std::log(rng.uniform())));
                top = std::max(top, std::max(prev, x));
                if (top > best) {
                    best = top;
                    arg = j;
                    interior = true;
                }
            } else if (x > best) {
                best = x;
                arg = j;
            }
            if (j == next_min) visit_coarse(out, next, next_min, stride, j, x);
        }
        out.m_fine = best;
        out.tau_fine = interior ? (static_cast<double>(arg) - 0.5) * dt : static_cast<double>(arg) * dt;
        out.x_end = x;
        out.min_gap = gaps.finish();
    }

    void draw_events(CounterRng& rng, CoupledDraw& out) const {
        const long count = cp_rate > 0 ? sample_poisson(cp_rate, rng) : 0;
        std::vector<double> times(static_cast<std::size_t>(count));
        for (double& t : times) t = rng.uniform();
        std::sort(times.begin(), times.end());
        std::vector<double> sums(times.size());
        GapTracker gaps;
        double s = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double j = jumps.sample(rng);
            s += j;
            sums[i] = s;
            if (std::abs(j) > 1.0) gaps.add(times[i]);
        }
        // Supremum over the candidates X(T_i-), X(T_i) and the endpoints, earliest on ties.
        double best = 0.0, tau = 0.0, before = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double left = cp_drift * times[i] + before;
            const double right = cp_drift * times[i] + sums[i];
            if (left > best) {
                best = left;
                tau = times[i];
            }
            if (right > best) {
                best = right;
                tau = times[i];
            }
            before = sums[i];
        }
        const double end = cp_drift + before;
        if (end > best) {
            best = end;
            tau = 1.0;
        }
        out.m_fine = best;
        out.tau_fine = tau;
        out.x_end = end;
        out.min_gap = gaps.finish();
        out.m_coarse.assign(stride.size(), kNegInf);
        for (std::size_t q = 0; q < stride.size(); ++q) {
            const std::size_t n = stride[q];  // Events: stride holds n itself
            const std::size_t points = shift == 0.0 ? n + 1 : n;
            std::size_t ptr = 0;
            double level = 0.0, top = kNegInf;
            for (std::size_t k = 0; k < points; ++k) {
                const double t = shift == 0.0 && k == n ? 1.0 : (static_cast<double>(k) + shift) / static_cast<double>(n);
                while (ptr < times.size() && times[ptr] <= t) level = sums[ptr++];
                top = std::max(top, cp_drift * t + level);
            }
            out.m_coarse[q] = top;
        }
    }
};

CoupledSimulator::CoupledSimulator(const LevyModel& model, std::vector<std::size_t> ns,
                                   std::size_t fine_factor, double shift, SimOptions options)
    : ns_(std::move(ns)), shift_(shift), impl_(std::make_unique<Impl>()) {
    if (ns_.empty()) throw GridSpecError("at least one grid size is required");
    if (fine_factor < 1) throw GridSpecError("fine factor must be >= 1");
    if (!(shift >= 0.0 && shift < 1.0)) throw GridSpecError("shift must lie in [0, 1)");
    const std::size_t n_max = *std::max_element(ns_.begin(), ns_.end());
    for (std::size_t n : ns_) {
        if (n < 1) throw GridSpecError("grid size must be >= 1");
        if (n_max % n != 0) throw GridSpecError("every grid size must divide the largest one");
    }
    Impl& im = *impl_;
    im.shift = shift;

    const auto* bm = model.as<BrownianWithDrift>();
    const auto* cp = model.as<CompoundPoissonDrift>();
    const bool events = options.engine == Engine::Auto && (cp || (bm && bm->sigma == 0));
    const bool collapsed = options.engine == Engine::Auto && bm && bm->sigma > 0 && options.bridge;

    auto set_lattice = [&](std::size_t steps) {
        im.steps = steps;
        for (std::size_t n : ns_) {
            const std::size_t st = steps / n;
            im.stride.push_back(st);
            im.offset.push_back(lattice_offset(shift, st));
        }
    };

    if (events) {
        im.kind = Impl::Kind::Events;
        if (cp) {
            im.cp_drift = cp->drift;
            im.cp_rate = cp->rate;
            im.jumps = cp->jumps;
        } else {
            im.cp_drift = bm->drift;
        }
        im.stride = ns_;
        engine_ = "exact_events";
        exact_sup_ = true;
        tracks_ = true;
        fine_steps_ = 0;
        info_.method = "compound_poisson";
    } else if (collapsed) {
        im.kind = Impl::Kind::Bridge;
        im.mu = bm->drift;
        im.sigma = bm->sigma;
        im.bridge = true;
        // Fewest sub-steps per interval of the finest grid that put the shift on the lattice.
        std::size_t q = 1;
        while (q <= fine_factor) {
            const double o = shift * static_cast<double>(q);
            if (std::abs(o - std::round(o)) < 1e-9) break;
            ++q;
        }
        if (q > fine_factor) q = fine_factor;
        set_lattice(n_max * q);
        engine_ = "brownian_bridge";
        exact_sup_ = true;
        tracks_ = true;
        info_.method = "gaussian";
        fine_steps_ = im.steps;
    } else {
        im.kind = Impl::Kind::Fine;
        set_lattice(n_max * fine_factor);
        im.sampler = std::make_unique<IncrementSampler>(model, 1.0 / static_cast<double>(im.steps), options.sampler);
        info_ = im.sampler->info();
        if (bm && bm->sigma > 0 && options.bridge) {
            im.bridge = true;
            im.sigma = bm->sigma;
        }
        engine_ = im.bridge ? "fine_grid_bridge" : "fine_grid";
        exact_sup_ = false;
        tracks_ = info_.tracks_big_jumps;
        fine_steps_ = im.steps;
    }
}

CoupledSimulator::~CoupledSimulator() = default;
CoupledSimulator::CoupledSimulator(CoupledSimulator&&) noexcept = default;

void CoupledSimulator::draw(CounterRng& rng, CoupledDraw& out) const {
    if (impl_->kind == Impl::Kind::Events) {
        impl_->draw_events(rng, out);
    } else {
        impl_->draw_grid(rng, out);
    }
}

CoupledDraw CoupledSimulator::draw(CounterRng& rng) const {
    CoupledDraw d;
    draw(rng, d);
    return d;
}

ErrorSample CoupledSimulator::error_sample(const CoupledDraw& d, std::size_t index, double bn) const {
    ErrorSample e;
    e.m_fine = d.m_fine;
    e.m_coarse = d.m_coarse.at(index);
    e.tau_fine = d.tau_fine;
    e.v_n = bn * (e.m_fine - e.m_coarse);
    e.excluded = d.min_gap < 1.0 / static_cast<double>(ns_.at(index));
    return e;
}

ErrorSample simulate_pair(const LevyModel& model, const GridSpec& grid, double bn, CounterRng& rng,
                          SimOptions options) {
    const CoupledSimulator sim(model, {grid.n}, grid.fine_factor, grid.shift, options);
    return sim.error_sample(sim.draw(rng), 0, bn);
}

ErrorSample simulate_pair(const LevyModel& model, const GridSpec& grid, const ZoomClass& zc,
                          CounterRng& rng, SimOptions options) {
    return simulate_pair(model, grid, scaling_bn(zc, static_cast<double>(grid.n)), rng, options);
}

PathGrid simulate_path(const LevyModel& model, std::size_t steps, CounterRng& rng, SamplerOptions options) {
    if (steps < 1) throw GridSpecError("a path needs at least one step");
    const double dt = 1.0 / static_cast<double>(steps);
    const IncrementSampler sampler(model, dt, options);
    PathGrid p;
    p.seed = rng.seed();
    p.stream = rng.stream();
    p.times.resize(steps + 1);
    p.values.resize(steps + 1);
    double x = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        if (i > 0) x += sampler.draw(rng);
        p.times[i] = static_cast<double>(i) * dt;
        p.values[i] = x;
    }
    return p;
}

double grid_max(const std::vector<double>& values, std::size_t stride, std::size_t offset) {
    if (stride == 0) throw GridSpecError("stride must be positive");
    double m = kNegInf;
    for (std::size_t i = offset; i < values.size(); i += stride) m = std::max(m, values[i]);
    return m;
}

bool nested_refinement_check(const LevyModel& model, std::size_t n, std::size_t fine_factor, CounterRng& rng) {
    const PathGrid p = simulate_path(model, 4 * n * fine_factor, rng);
    const double m1 = grid_max(p.values, 4 * fine_factor);
    const double m2 = grid_max(p.values, 2 * fine_factor);
    const double m4 = grid_max(p.values, fine_factor);
    const double mf = grid_max(p.values, 1);
    return m1 <= m2 && m2 <= m4 && m4 <= mf;
}

void write_path_csv(std::ostream& os, const std::vector<PathGrid>& paths) {
    os << "# levysup path dump v1: one row per grid point; path = index in this file; "
          "seed/stream identify the generator\n";
    os << "path,seed,stream,time,value\n";
    const auto prec = os.precision(17);
    for (std::size_t k = 0; k < paths.size(); ++k) {
        const PathGrid& p = paths[k];
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            os << k << ',' << p.seed << ',' << p.stream << ',' << p.times[i] << ',' << p.values[i] << '\n';
        }
    }
    os.precision(prec);
}

}  // namespace levysup
