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
#include "levysup/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "levysup/error.hpp"
#include "levysup/measure.hpp"
#include "levysup/parallel.hpp"
#include "levysup/sampling.hpp"
#include "numerics.hpp"

namespace levysup {

MCResult make_result(const RunningStat& s, std::uint64_t seed, std::string tag) {
    MCResult r;
    r.estimate = s.mean;
    r.reps = s.count;
    r.std_err = s.count > 1 ? std::sqrt(s.variance() / static_cast<double>(s.count)) : 0.0;
    r.ci_low = r.estimate - 1.96 * r.std_err;
    r.ci_high = r.estimate + 1.96 * r.std_err;
    r.seed = seed;
    r.tag = std::move(tag);
    return r;
}

RateFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& se) {
    const std::size_t k = x.size();
    if (k < 4 || y.size() != k || se.size() != k) throw InsufficientDataError("log-log fit needs at least 4 points");
    for (std::size_t i = 0; i < k; ++i) {
        if (!(y[i] > 0)) throw InsufficientDataError("log-log fit: non-positive value at grid point " + std::to_string(x[i]));
        if (i > 0 && !(x[i] > x[i - 1])) throw InsufficientDataError("log-log fit: grid must be strictly increasing");
    }
    std::vector<double> lx(k), ly(k), w(k);
    for (std::size_t i = 0; i < k; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        w[i] = se[i] > 0 ? (y[i] / se[i]) * (y[i] / se[i]) : 1.0;
    }
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sw += w[i];
        sx += w[i] * lx[i];
        sy += w[i] * ly[i];
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
        sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
        syy += w[i] * (ly[i] - my) * (ly[i] - my);
    }
    RateFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    // Weights are inverse variances of log y, so the slope variance is 1 / sxx.
    f.slope_se = std::sqrt(1.0 / sxx);
    f.slope_ci_low = f.slope - 1.96 * f.slope_se;
    f.slope_ci_high = f.slope + 1.96 * f.slope_se;
    f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    f.grid = x;
    return f;
}

namespace {

struct MomentAcc {
    std::vector<RunningStat> scaled, excluded, unscaled;
    RunningStat interior;
    void merge(const MomentAcc& o) {
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            scaled[i].merge(o.scaled[i]);
            excluded[i].merge(o.excluded[i]);
            unscaled[i].merge(o.unscaled[i]);
        }
        interior.merge(o.interior);
    }
};

void check_reps(const RunConfig& cfg) {
    if (cfg.reps < 2) throw ValidationError("at least 2 replications are required");
}

double power(double v, double p) { return p == 1.0 ? v : (v == 0.0 ? 0.0 : std::pow(v, p)); }

}  // namespace

MomentStudy moment_error(const LevyModel& model, const ZoomClass& zc, double p,
                         const std::vector<std::size_t>& ns, const RunConfig& cfg) {
    if (!(p > 0)) throw DomainError("moment_error: p must be positive");
    check_reps(cfg);
    const CoupledSimulator sim(model, ns, cfg.fine_factor, cfg.shift, cfg.sim);
    std::vector<double> bn(ns.size(), 1.0);
    if (zc.has_limit()) {
        for (std::size_t i = 0; i < ns.size(); ++i) bn[i] = scaling_bn(zc, static_cast<double>(ns[i]));
    }
    MomentAcc proto;
    proto.scaled.resize(ns.size());
    proto.excluded.resize(ns.size());
    proto.unscaled.resize(ns.size());
    const MomentAcc acc = run_blocks(cfg.reps, cfg.workers, proto, [&](std::uint64_t rep, MomentAcc& a) {
        CounterRng rng(cfg.seed, rep);
        CoupledDraw d;
        sim.draw(rng, d);
        a.interior.add(d.tau_fine > 0.0 && d.tau_fine < 1.0 ? 1.0 : 0.0);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const ErrorSample e = sim.error_sample(d, i, bn[i]);
            const double vp = power(e.v_n, p);
            a.scaled[i].add(vp);
            a.excluded[i].add(e.excluded ? 0.0 : vp);
            a.unscaled[i].add(power(e.m_fine - e.m_coarse, p));
        }
    });
    MomentStudy st;
    st.p = p;
    st.engine = sim.engine();
    st.exact_supremum = sim.exact_supremum();
    st.tracks_big_jumps = sim.tracks_big_jumps();
    for (std::size_t i = 0; i < ns.size(); ++i) {
        MomentRow r;
        r.n = ns[i];
        r.bn = bn[i];
        r.scaled = make_result(acc.scaled[i], cfg.seed, "moment_scaled");
        r.excluded = make_result(acc.excluded[i], cfg.seed, "moment_excluded");
        r.unscaled = make_result(acc.unscaled[i], cfg.seed, "moment_unscaled");
        st.rows.push_back(r);
    }
    st.tau_interior = make_result(acc.interior, cfg.seed, "tau_interior");
    const DiagnosticIndices ix = indices(model);
    if (ix.beta_inf <= p) {
        st.warning = "beta_inf = " + std::to_string(ix.beta_inf) + " <= p: E (V^(n))^p may be infinite; "
                     "the A^(n)-excluded estimate is the meaningful one";
    }
    if (!zc.has_limit()) {
        st.warning += std::string(st.warning.empty() ? "" : "; ") + "no zooming-in limit: b_n = 1";
    }
    return st;
}

namespace {

struct DeltaAcc {
    std::vector<RunningStat> delta, exceed;
    void merge(const DeltaAcc& o) {
        for (std::size_t i = 0; i < delta.size(); ++i) {
            delta[i].merge(o.delta[i]);
            exceed[i].merge(o.exceed[i]);
        }
    }
};

}  // namespace

std::vector<DeltaRow> delta_probability(const LevyModel& model, const ZoomClass& zc, const std::vector<double>& xs,
                                        const std::vector<std::size_t>& ns, const RunConfig& cfg) {
    for (double x : xs) {
        if (!(x > 0)) throw DomainError("delta_probability: x must be positive");
    }
    check_reps(cfg);
    const CoupledSimulator sim(model, ns, cfg.fine_factor, cfg.shift, cfg.sim);
    const std::size_t cells = ns.size() * xs.size();
    DeltaAcc proto;
    proto.delta.resize(cells);
    proto.exceed.resize(cells);
    const DeltaAcc acc = run_blocks(cfg.reps, cfg.workers, proto, [&](std::uint64_t rep, DeltaAcc& a) {
        CounterRng rng(cfg.seed, rep);
        CoupledDraw d;
        sim.draw(rng, d);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const bool above = d.m_fine > xs[j];
                a.delta[i * xs.size() + j].add(above && d.m_coarse[i] <= xs[j] ? 1.0 : 0.0);
                a.exceed[i * xs.size() + j].add(above ? 1.0 : 0.0);
            }
        }
    });
    std::vector<DeltaRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double bn = zc.has_limit() ? scaling_bn(zc, static_cast<double>(ns[i])) : 1.0;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            DeltaRow r;
            r.n = ns[i];
            r.x = xs[j];
            r.bn = bn;
            r.delta = make_result(acc.delta[i * xs.size() + j], cfg.seed, "delta");
            RunningStat sc = acc.delta[i * xs.size() + j];
            sc.mean *= bn;
            sc.m2 *= bn * bn;
            r.scaled = make_result(sc, cfg.seed, "delta_scaled");
            r.exceed = make_result(acc.exceed[i * xs.size() + j], cfg.seed, "exceed");
            rows.push_back(r);
        }
    }
    return rows;
}

namespace {

struct SampleAcc {
    std::vector<double> values;
    void merge(const SampleAcc& o) { values.insert(values.end(), o.values.begin(), o.values.end()); }
};

MCResult kernel_estimate(const std::vector<double>& m, double x, double h, std::uint64_t seed, const char* tag) {
    RunningStat s;
    for (double v : m) {
        // Reflection at 0 keeps the estimator consistent near the boundary of the support.
        s.add((num::norm_pdf((x - v) / h) + num::norm_pdf((x + v) / h)) / h);
    }
    return make_result(s, seed, tag);
}

}  // namespace

std::vector<DensityRow> density_at(const LevyModel& model, const std::vector<double>& xs, std::size_t resolution,
                                   const RunConfig& cfg) {
    const DiagnosticIndices ix = indices(model);
    if (!(ix.alpha > 1.0)) {
        throw UnsupportedError("density_at: a continuous density of M is only guaranteed for alpha > 1");
    }
    for (double x : xs) {
        if (!(x > 0)) throw DomainError("density_at: x must be positive");
    }
    check_reps(cfg);
    const CoupledSimulator sim(model, {resolution}, 1, 0.0, cfg.sim);
    const SampleAcc acc = run_blocks(cfg.reps, cfg.workers, SampleAcc{}, [&](std::uint64_t rep, SampleAcc& a) {
        CounterRng rng(cfg.seed, rep);
        a.values.push_back(sim.draw(rng).m_fine);
    });
    std::vector<double> sorted = acc.values;
    std::sort(sorted.begin(), sorted.end());
    RunningStat all;
    for (double v : sorted) all.add(v);
    const auto q = [&](double f) { return sorted[static_cast<std::size_t>(f * static_cast<double>(sorted.size() - 1))]; };
    const double spread = std::min(std::sqrt(all.variance()), (q(0.75) - q(0.25)) / 1.34);
    const double h = 0.9 * spread * std::pow(static_cast<double>(sorted.size()), -0.2);
    std::vector<DensityRow> rows;
    for (double x : xs) {
        DensityRow r;
        r.x = x;
        r.bandwidth = h;
        r.estimate = kernel_estimate(acc.values, x, h, cfg.seed, "density");
        r.half_bandwidth = kernel_estimate(acc.values, x, 0.5 * h, cfg.seed, "density_half_bandwidth");
        rows.push_back(r);
    }
    return rows;
}

namespace {

struct Extremes {
    double low = 0.0;
    double high = 0.0;
};

// Running infimum and supremum over [0, horizon] of drift t + compound Poisson.
Extremes cp_extremes(const CompoundPoissonDrift& c, double horizon, CounterRng& rng) {
    const long count = c.rate > 0 ? sample_poisson(c.rate * horizon, rng) : 0;
    std::vector<double> times(static_cast<std::size_t>(count));
    for (double& t : times) t = horizon * rng.uniform();
    std::sort(times.begin(), times.end());
    Extremes e;
    double s = 0.0;
    for (double t : times) {
        const double left = c.drift * t + s;
        s += c.jumps.sample(rng);
        const double right = c.drift * t + s;
        e.low = std::min({e.low, left, right});
        e.high = std::max({e.high, left, right});
    }
    const double end = c.drift * horizon + s;
    e.low = std::min(e.low, end);
    e.high = std::max(e.high, end);
    return e;
}

struct CppAcc {
    RunningStat rhs, interior, integral;
    void merge(const CppAcc& o) {
        rhs.merge(o.rhs);
        interior.merge(o.interior);
        integral.merge(o.integral);
    }
};

}  // namespace

CppLimit cpp_limit_rhs(const LevyModel& model, const RunConfig& cfg) {
    const auto* c = model.as<CompoundPoissonDrift>();
    if (!c) throw UnsupportedError("cpp_limit_rhs: needs a compound Poisson process with drift");
    if (c->rate > 0 && !std::isfinite(c->jumps.large_abs_moment(1.0))) {
        throw UnsupportedError("cpp_limit_rhs: needs int_{|x|>1} |x| Pi(dx) < inf");
    }
    check_reps(cfg);
    const CoupledSimulator sim(model, {1}, 1);
    const double lambda2 = c->rate * c->rate;
    const CppAcc acc = run_blocks(cfg.reps, cfg.workers, CppAcc{}, [&](std::uint64_t rep, CppAcc& a) {
        CounterRng rng(cfg.seed, rep);
        const CoupledDraw d = sim.draw(rng);
        const double in = d.tau_fine > 0.0 && d.tau_fine < 1.0 ? 1.0 : 0.0;
        double g = 0.0;
        if (c->rate > 0) {
            CounterRng sub = rng.substream(1);
            const double u = sub.uniform();
            const double j1 = c->jumps.sample(sub);
            const double j2 = c->jumps.sample(sub);
            const Extremes before = cp_extremes(*c, u, sub);
            const Extremes after = cp_extremes(*c, 1.0 - u, sub);
            g = lambda2 * std::max(0.0, std::min(j1 + before.low, -j2 - after.high));
        }
        a.interior.add(in);
        a.integral.add(g);
        a.rhs.add(0.5 * std::abs(c->drift) * in + 0.5 * g);
    });
    return {make_result(acc.rhs, cfg.seed, "cpp_rhs"), make_result(acc.interior, cfg.seed, "tau_interior"),
            make_result(acc.integral, cfg.seed, "cpp_integral")};
}

RateFit tail_index(const std::vector<ProbPoint>& points) {
    std::vector<ProbPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const ProbPoint& a, const ProbPoint& b) { return a.eps < b.eps; });
    std::vector<double> x, y, se;
    for (const ProbPoint& p : sorted) {
        if (!(p.prob.estimate > 0)) {
            throw InsufficientDataError("tail_index: zero probability estimate at eps = " + std::to_string(p.eps));
        }
        x.push_back(p.eps);
        y.push_back(p.prob.estimate);
        se.push_back(p.prob.std_err);
    }
    return loglog_fit(x, y, se);
}

RateFit tail_index(const std::function<MCResult(double)>& sampler, const std::vector<double>& eps) {
    std::vector<ProbPoint> pts;
    for (double e : eps) pts.push_back({e, sampler(e)});
    return tail_index(pts);
}

namespace {

struct TailAcc {
    std::vector<RunningStat> tau, sup;
    void merge(const TailAcc& o) {
        for (std::size_t i = 0; i < tau.size(); ++i) {
            tau[i].merge(o.tau[i]);
            sup[i].merge(o.sup[i]);
        }
    }
};

}  // namespace

SmallTimeTails small_time_tails(const LevyModel& model, const std::vector<double>& eps, std::size_t resolution,
                                const RunConfig& cfg) {
    check_reps(cfg);
    const CoupledSimulator sim(model, {resolution}, 1, 0.0, cfg.sim);
    TailAcc proto;
    proto.tau.resize(eps.size());
    proto.sup.resize(eps.size());
    const TailAcc acc = run_blocks(cfg.reps, cfg.workers, proto, [&](std::uint64_t rep, TailAcc& a) {
        CounterRng rng(cfg.seed, rep);
        const CoupledDraw d = sim.draw(rng);
        for (std::size_t i = 0; i < eps.size(); ++i) {
            a.tau[i].add(d.tau_fine <= eps[i] ? 1.0 : 0.0);
            a.sup[i].add(d.m_fine <= eps[i] ? 1.0 : 0.0);
        }
    });
    SmallTimeTails out;
    out.engine = sim.engine();
    for (std::size_t i = 0; i < eps.size(); ++i) {
        out.tau_below.push_back({eps[i], make_result(acc.tau[i], cfg.seed, "tau_below")});
        out.sup_below.push_back({eps[i], make_result(acc.sup[i], cfg.seed, "sup_below")});
    }
    return out;
}

std::vector<ProbPoint> positivity(const LevyModel& model, const std::vector<double>& eps, const RunConfig& cfg) {
    check_reps(cfg);
    std::vector<ProbPoint> out;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const IncrementSampler sampler(model, eps[k], SamplerOptions{1e4, 32.0});
        const RunningStat s = run_blocks(cfg.reps, cfg.workers, RunningStat{}, [&](std::uint64_t rep, RunningStat& a) {
            CounterRng rng = CounterRng(cfg.seed, rep).substream(0x5051 + k);
            a.add(sampler.draw(rng) > 0.0 ? 1.0 : 0.0);
        });
        out.push_back({eps[k], make_result(s, cfg.seed, "positivity")});
    }
    return out;
}

RateStudy rate_fit(const LevyModel& model, RateQuantity quantity, const std::vector<std::size_t>& ns, double p_or_x,
                   const RunConfig& cfg) {
    if (ns.size() < 4) throw InsufficientDataError("rate_fit: at least 4 grid sizes are required");
    for (std::size_t i = 1; i < ns.size(); ++i) {
        if (ns[i] != 2 * ns[i - 1]) throw ValidationError("rate_fit: the n-grid must be dyadic and ascending");
    }
    RateStudy st;
    st.ns = ns;
    const ZoomClass none;
    if (quantity == RateQuantity::Moment) {
        const MomentStudy m = moment_error(model, none, p_or_x, ns, cfg);
        for (const MomentRow& r : m.rows) st.values.push_back(r.unscaled);
    } else {
        for (const DeltaRow& r : delta_probability(model, none, {p_or_x}, ns, cfg)) st.values.push_back(r.delta);
    }
    std::vector<double> x, y, se;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        x.push_back(static_cast<double>(ns[i]));
        y.push_back(st.values[i].estimate);
        se.push_back(st.values[i].std_err);
    }
    st.fit = loglog_fit(x, y, se);
    return st;
}

}  // namespace levysup
