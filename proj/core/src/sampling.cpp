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
#include "levysup/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/tools/roots.hpp>

#include "levysup/error.hpp"
#include "levysup/measure.hpp"
#include "numerics.hpp"

namespace levysup {

namespace {

// Chambers-Mallows-Stuck with the constants of one law precomputed.
struct StableGenerator {
    double alpha, beta, sigma, b, s, shift;

    StableGenerator(double a, double be, double scale) : alpha(a), beta(be) {
        if (a == 1.0) {
            sigma = 0.5 * scale;
            b = s = 0.0;
            shift = (2.0 / num::kPi) * beta * sigma * std::log(sigma);
        } else {
            sigma = scale * std::pow(2.0, -1.0 / a);
            const double t = beta * std::tan(0.5 * num::kPi * a);
            b = std::atan(t) / a;
            s = std::pow(1.0 + t * t, 0.5 / a);
            shift = 0.0;
        }
    }

    double operator()(CounterRng& rng) const {
        const double pi = num::kPi;
        const double v = pi * (rng.uniform() - 0.5);
        const double w = rng.exponential();
        if (alpha == 1.0) {
            const double hb = 0.5 * pi + beta * v;
            const double x = (2.0 / pi) * (hb * std::tan(v) - beta * std::log(0.5 * pi * w * std::cos(v) / hb));
            return sigma * x + shift;
        }
        const double av = alpha * (v + b);
        const double x = s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
                         std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
        return sigma * x;
    }
};

// X_t = factor * X_1 + offset for the strictly stable part plus drift.
struct StableTimeScale {
    double factor, offset;
    StableTimeScale(double alpha, double beta, double scale, double drift, double t) {
        if (alpha == 1.0) {
            factor = t;
            offset = scale * beta / num::kPi * t * std::log(t) + drift * t;
        } else {
            factor = std::pow(t, 1.0 / alpha);
            offset = drift * t;
        }
    }
};

}  // namespace

double sample_stable(double alpha, double beta, double scale, CounterRng& rng) {
    if (!(alpha > 0 && alpha <= 2) || !(std::abs(beta) <= 1) || !(scale > 0)) {
        throw DomainError("sample_stable: parameters out of range");
    }
    return StableGenerator(alpha, beta, scale)(rng);
}

double sample_stable_at(double alpha, double beta, double scale, double drift, double t,
                        CounterRng& rng) {
    const StableTimeScale ts(alpha, beta, scale, drift, t);
    return ts.factor * sample_stable(alpha, beta, scale, rng) + ts.offset;
}

double sample_gamma(double shape, double rate, CounterRng& rng) {
    if (!(shape > 0 && rate > 0)) throw DomainError("sample_gamma: shape and rate must be positive");
    if (shape >= 1.0) return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
    // G_a = G_{a+1} U^{1/a}, assembled in logs so tiny shapes do not lose the draw.
    const double g = std::gamma_distribution<double>(shape + 1.0, 1.0)(rng);
    const double lg = std::log(g) + std::log(rng.uniform()) / shape;
    return std::exp(lg) / rate;
}

double sample_inverse_gaussian(double mean, double shape, CounterRng& rng) {
    if (!(mean > 0 && shape > 0)) throw DomainError("sample_inverse_gaussian: parameters must be positive");
    const double z = rng.normal();
    const double w = 0.5 * mean * z * z / shape;
    // mean * (1 + w - sqrt(w^2 + 2w)) without the cancellation for large w.
    const double x = mean / (1.0 + w + std::sqrt(w * w + 2.0 * w));
    return rng.uniform() * (mean + x) <= mean ? x : mean * mean / x;
}

long sample_poisson(double mean, CounterRng& rng) {
    if (!(mean >= 0)) throw DomainError("sample_poisson: mean must be non-negative");
    if (mean == 0) return 0;
    return std::poisson_distribution<long>(mean)(rng);
}

namespace {

struct Part {
    virtual ~Part() = default;
    virtual double draw(CounterRng& rng, double dt, std::vector<double>* big) const = 0;
};

struct GaussPart final : Part {
    double mean, sd;  // per step
    GaussPart(double m, double s) : mean(m), sd(s) {}
    double draw(CounterRng& rng, double, std::vector<double>*) const override {
        return sd == 0 ? mean : mean + sd * rng.normal();
    }
};

struct StablePart final : Part {
    StableGenerator gen;
    StableTimeScale ts;
    double sign;
    StablePart(double a, double b, double c, double d, double s, double dt)
        : gen(a, b, c), ts(a, b, c, d, dt), sign(s) {}
    double draw(CounterRng& rng, double, std::vector<double>*) const override {
        return sign * (ts.factor * gen(rng) + ts.offset);
    }
};

struct GammaPart final : Part {
    double shape, rate, sign;  // shape per step
    GammaPart(double k, double r, double s) : shape(k), rate(r), sign(s) {}
    double draw(CounterRng& rng, double, std::vector<double>*) const override {
        return sign * sample_gamma(shape, rate, rng);
    }
};

struct InverseGaussianPart final : Part {
    double mean, shape, sign;  // per step
    InverseGaussianPart(double m, double k, double s) : mean(m), shape(k), sign(s) {}
    double draw(CounterRng& rng, double, std::vector<double>*) const override {
        return sign * sample_inverse_gaussian(mean, shape, rng);
    }
};

// Tempered one-sided stable by rejection from the untempered law: accept S with prob e^{-lambda S}.
struct TemperedRejectPart final : Part {
    StableGenerator gen;
    StableTimeScale ts;
    double lambda, sign;
    TemperedRejectPart(double a, double c, double l, double s, double dt)
        : gen(a, 1.0, c), ts(a, 1.0, c, 0.0, dt), lambda(l), sign(s) {}
    double draw(CounterRng& rng, double, std::vector<double>*) const override {
        for (int i = 0; i < 100000; ++i) {
            const double s = ts.factor * gen(rng) + ts.offset;
            if (rng.uniform() <= std::exp(-lambda * s)) return sign * s;
        }
        throw Error("tempered stable rejection sampler did not accept");
    }
};

// Compound Poisson part: count ~ Poisson(mean), jumps from `jump`.
template <class JumpFn>
struct PoissonPart final : Part {
    double mean;  // per step
    JumpFn jump;
    PoissonPart(double m, JumpFn f) : mean(m), jump(std::move(f)) {}
    double draw(CounterRng& rng, double dt, std::vector<double>* big) const override {
        const long count = sample_poisson(mean, rng);
        double sum = 0.0;
        for (long i = 0; i < count; ++i) {
            const double j = jump(rng);
            sum += j;
            const double at = rng.uniform() * dt;
            if (big && std::abs(j) > 1.0) big->push_back(at);
        }
        return sum;
    }
};

template <class JumpFn>
std::unique_ptr<Part> poisson_part(double mean, JumpFn f) {
    return std::make_unique<PoissonPart<JumpFn>>(mean, std::move(f));
}

// Variate from the density proportional to x^{-1-a} e^{-l x} on (h, inf), a > -1.
double tempered_jump(double a, double l, double h, CounterRng& rng) {
    const bool pareto = a > 0 && l * h < 1.0;
    for (int i = 0; i < 1000000; ++i) {
        if (pareto) {
            const double x = h * std::exp(-std::log(rng.uniform()) / a);
            if (l == 0 || rng.uniform() <= std::exp(-l * (x - h))) return x;
        } else {
            const double x = h + rng.exponential() / l;
            if (rng.uniform() <= std::pow(x / h, -1.0 - a)) return x;
        }
    }
    throw Error("tempered jump sampler did not accept");
}

// Threshold h with tail(h) == rate, capped at `cap`, on a tail decreasing in h.
double solve_threshold(const std::function<double(double)>& tail_fn, double rate, double cap) {
    if (tail_fn(cap) >= rate) return cap;
    auto g = [&](double lh) { return std::log(tail_fn(std::exp(lh))) - std::log(rate); };
    double lo = std::log(cap) - 2.0;
    while (g(lo) < 0) {
        lo -= 2.0;
        if (lo < -690) throw Error("no small-jump threshold reaches the requested jump rate");
    }
    const double hi = std::log(cap);
    boost::math::tools::eps_tolerance<double> tol(30);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, it);
    return std::exp(0.5 * (r.first + r.second));
}

// Tail of one side tabulated on a geometric grid above h, inverted by log-log interpolation.
struct TailTable {
    std::vector<double> log_x, log_tail;

    TailTable(const std::function<double(double)>& tail_fn, double h) {
        const double t0 = tail_fn(h);
        double x = h;
        while (true) {
            const double t = tail_fn(x);
            if (!(t > 0) || t < 1e-13 * t0 || x > 1e12) break;
            log_x.push_back(std::log(x));
            log_tail.push_back(std::log(t));
            x *= 1.1;
        }
    }

    double sample(CounterRng& rng) const {
        const double target = log_tail.front() + std::log(rng.uniform());
        if (target <= log_tail.back()) return std::exp(log_x.back());
        // log_tail is decreasing.
        auto it = std::lower_bound(log_tail.begin(), log_tail.end(), target, std::greater<double>());
        const std::size_t i = static_cast<std::size_t>(it - log_tail.begin());
        if (i == 0) return std::exp(log_x.front());
        const double w = (target - log_tail[i - 1]) / (log_tail[i] - log_tail[i - 1]);
        return std::exp(log_x[i - 1] + w * (log_x[i] - log_x[i - 1]));
    }
};

// Half-scale S1 parameter of the totally skewed stable law with Levy density c x^{-1-a}.
double one_sided_scale(double c, double a) {
    if (a == 1.0) return num::kPi * c;
    return std::pow(2.0 * c * (-std::tgamma(-a) * std::cos(num::kPi * a / 2.0)), 1.0 / a);
}

}  // namespace

struct IncrementSampler::Impl {
    std::vector<std::unique_ptr<Part>> parts;
    double drift_step = 0.0;
    bool tracks = true;

    // Subordination: X = drift dt + Y_{S_dt}.
    std::unique_ptr<IncrementSampler> inner;
    const LevyModel* outer = nullptr;
    std::shared_ptr<const LevyModel> outer_hold;

    double draw(CounterRng& rng, double dt, std::vector<double>* big) const {
        if (inner) {
            const double s = inner->draw(rng);
            double y = 0.0;
            if (s > 0) {
                if (const auto* b = outer->as<BrownianWithDrift>()) {
                    y = b->drift * s + b->sigma * std::sqrt(s) * rng.normal();
                } else if (const auto* st = outer->as<Stable>()) {
                    y = sample_stable_at(st->alpha, st->beta, st->scale, st->drift, s, rng);
                }
            }
            return drift_step + y;
        }
        double x = drift_step;
        for (const auto& p : parts) x += p->draw(rng, dt, big);
        return x;
    }
};

namespace {

// Adds the parts for one side of a tempered stable measure, realized with Levy-Khintchine gamma
// equal to that of the one-sided model; returns that gamma.
double add_tempered_side(IncrementSampler::Impl& im, SamplerInfo& info, double c, double a, double l,
                         double sign, double dt, const SamplerOptions& opt) {
    if (c == 0) return 0.0;
    TemperedStable ts;
    ts.c_plus = c;
    ts.alpha_plus = a;
    ts.lambda_plus = l;
    const LevyModel side = tempered_stable(ts, "side");
    const double g = lk_gamma(side);

    if (a < 0) {
        const double rate = c * std::tgamma(-a) * std::pow(l, a);
        const double shape = -a;
        im.parts.push_back(poisson_part(rate * dt, [shape, l, sign](CounterRng& r) {
            return sign * sample_gamma(shape, l, r);
        }));
        info.method += "+cp_gamma";
        return g;
    }
    if (a == 0) {
        im.parts.push_back(std::make_unique<GammaPart>(c * dt, l, sign));
        im.tracks = false;
        info.method += "+gamma";
        return g;
    }
    if (l == 0) {
        const double sc = one_sided_scale(c, a);
        const double extra = g - lk_gamma(stable(a, 1.0, sc, 0.0));
        im.parts.push_back(std::make_unique<StablePart>(a, 1.0, sc, extra, sign, dt));
        im.tracks = false;
        info.method += "+stable";
        return g;
    }
    if (a == 0.5) {
        const double mean = c * dt * std::sqrt(num::kPi / l);
        const double shape = 2.0 * num::kPi * c * c * dt * dt;
        im.parts.push_back(std::make_unique<InverseGaussianPart>(mean, shape, sign));
        im.tracks = false;
        info.method += "+inverse_gaussian";
        return g;
    }
    if (a < 1 && dt * c * (-std::tgamma(-a)) * std::pow(l, a) < std::log(1.5)) {
        im.parts.push_back(std::make_unique<TemperedRejectPart>(a, one_sided_scale(c, a), l, sign, dt));
        im.tracks = false;
        info.method += "+stable_rejection";
        return g;
    }
    const double rate = std::max(opt.max_jump_rate, opt.min_jumps_per_step / dt);
    const double h = solve_threshold([&](double x) { return tail_plus(side, x); }, rate, 0.5);
    const double big_rate = tail_plus(side, h);
    const double m = truncated_mean(side, h), v = truncated_variance(side, h);
    im.parts.push_back(poisson_part(big_rate * dt, [a, l, h, sign](CounterRng& r) {
        return sign * tempered_jump(a, l, h, r);
    }));
    im.parts.push_back(std::make_unique<GaussPart>(sign * m * dt, std::sqrt(v * dt)));
    info.exact = false;
    info.threshold = std::max(info.threshold, h);
    info.jump_rate += big_rate;
    const double ratio = std::sqrt(v) / h;
    info.gaussian_ratio = info.gaussian_ratio == 0 ? ratio : std::min(info.gaussian_ratio, ratio);
    info.method += "+threshold";
    return g;
}

}  // namespace

IncrementSampler::IncrementSampler(const LevyModel& model, double dt, SamplerOptions options)
    : dt_(dt), impl_(std::make_unique<Impl>()) {
    if (!(dt > 0) || !std::isfinite(dt)) throw DomainError("IncrementSampler: dt must be positive");
    Impl& im = *impl_;
    if (const auto* b = model.as<BrownianWithDrift>()) {
        im.parts.push_back(std::make_unique<GaussPart>(b->drift * dt, b->sigma * std::sqrt(dt)));
        info_.method = "gaussian";
    } else if (const auto* s = model.as<Stable>()) {
        im.parts.push_back(std::make_unique<StablePart>(s->alpha, s->beta, s->scale, s->drift, 1.0, dt));
        im.tracks = false;
        info_.method = "chambers_mallows_stuck";
    } else if (const auto* t = model.as<TemperedStable>()) {
        info_.method = "tempered";
        const double gp = add_tempered_side(im, info_, t->c_plus, t->alpha_plus, t->lambda_plus, 1.0, dt, options);
        const double gm = add_tempered_side(im, info_, t->c_minus, t->alpha_minus, t->lambda_minus, -1.0, dt, options);
        im.drift_step = (lk_gamma(model) - gp + gm) * dt;
    } else if (const auto* c = model.as<CompoundPoissonDrift>()) {
        im.drift_step = c->drift * dt;
        if (c->rate > 0) {
            JumpDistribution jumps = c->jumps;
            im.parts.push_back(poisson_part(c->rate * dt, [jumps](CounterRng& r) { return jumps.sample(r); }));
        }
        info_.method = "compound_poisson";
    } else if (const auto* sub = model.as<Subordinated>()) {
        if (!sub->outer->as<BrownianWithDrift>() && !sub->outer->as<Stable>()) {
            throw UnsupportedError("sampler: subordination needs a Brownian or stable outer process");
        }
        im.inner = std::make_unique<IncrementSampler>(*sub->inner, dt, options);
        im.outer_hold = sub->outer;
        im.outer = im.outer_hold.get();
        im.drift_step = sub->drift * dt;
        im.tracks = false;
        info_.exact = im.inner->info().exact;
        info_.method = "subordinated(" + im.inner->info().method + ")";
    } else if (model.as<Composite>()) {
        const double rate = std::max(options.max_jump_rate, options.min_jumps_per_step / dt);
        const double h = solve_threshold([&](double x) { return tail(model, x); }, rate, 0.5);
        const double m = truncated_mean(model, h), v = truncated_variance(model, h);
        for (int side = 0; side < 2; ++side) {
            const double sign = side == 0 ? 1.0 : -1.0;
            auto tf = [&](double x) { return side == 0 ? tail_plus(model, x) : tail_minus(model, x); };
            const double mass = tf(h);
            if (!(mass > 0)) continue;
            auto table = std::make_shared<const TailTable>(tf, h);
            im.parts.push_back(poisson_part(mass * dt, [table, sign](CounterRng& r) { return sign * table->sample(r); }));
            info_.jump_rate += mass;
        }
        im.parts.push_back(std::make_unique<GaussPart>(m * dt, std::sqrt(v * dt)));
        info_.exact = false;
        info_.threshold = h;
        info_.gaussian_ratio = std::sqrt(v) / h;
        info_.method = "composite_threshold";
    }
    info_.tracks_big_jumps = im.tracks;
}

IncrementSampler::~IncrementSampler() = default;
IncrementSampler::IncrementSampler(IncrementSampler&&) noexcept = default;
IncrementSampler& IncrementSampler::operator=(IncrementSampler&&) noexcept = default;

double IncrementSampler::draw(CounterRng& rng, std::vector<double>* big_jumps) const {
    return impl_->draw(rng, dt_, info_.tracks_big_jumps ? big_jumps : nullptr);
}

double sample_increment(const LevyModel& model, double dt, CounterRng& rng, SamplerInfo* info) {
    const IncrementSampler s(model, dt, SamplerOptions{1e4, 32.0});
    if (info) *info = s.info();
    return s.draw(rng);
}

}  // namespace levysup
