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
#include "levysup/model.hpp"

#include <cmath>

#include "levysup/error.hpp"
#include "levysup/measure.hpp"
#include "numerics.hpp"

namespace levysup {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
}

bool finite(double x) { return std::isfinite(x); }

void validate(const BrownianWithDrift& b) {
    require(finite(b.drift) && finite(b.sigma) && b.sigma >= 0, "brownian: need finite drift and sigma >= 0");
}

void validate(const Stable& s) {
    require(s.alpha > 0 && s.alpha < 2, "stable: alpha must lie in (0, 2)");
    require(s.beta >= -1 && s.beta <= 1, "stable: beta must lie in [-1, 1]");
    require(s.scale > 0 && finite(s.scale), "stable: scale must be positive");
    require(finite(s.drift), "stable: drift must be finite");
}

void validate_side(double c, double a, double l, const char* side) {
    (void)side;
    require(c >= 0 && finite(c), "tempered_stable: c must be >= 0");
    if (c == 0) return;
    require(a < 2 && finite(a), "tempered_stable: alpha must be < 2");
    require(l >= 0 && finite(l), "tempered_stable: lambda must be >= 0");
    require(l > 0 || a > 0, "tempered_stable: alpha must be > 0 when lambda = 0");
}

void validate(const TemperedStable& t) {
    validate_side(t.c_plus, t.alpha_plus, t.lambda_plus, "plus");
    validate_side(t.c_minus, t.alpha_minus, t.lambda_minus, "minus");
    require(finite(t.drift), "tempered_stable: drift must be finite");
}

void validate(const CompoundPoissonDrift& c) {
    require(finite(c.drift), "compound_poisson: drift must be finite");
    require(c.rate >= 0 && finite(c.rate), "compound_poisson: rate must be >= 0");
}

void validate(const Subordinated& s) {
    require(s.outer && s.inner, "subordinated: outer and inner models are required");
    require(finite(s.drift), "subordinated: drift must be finite");
    require(is_subordinator(*s.inner), "subordinated: inner model must be a subordinator");
}

void validate(const Composite& c) {
    require(finite(c.gamma) && finite(c.sigma) && c.sigma >= 0, "composite: need finite gamma and sigma >= 0");
    require(c.density != nullptr, "composite: density is required");
    const LevyDensity& d = *c.density;
    require(d.power_zero >= 0 && d.power_zero <= 2, "composite: power_zero must lie in [0, 2]");
    require(d.power_inf >= 0, "composite: power_inf must be >= 0");
}

}  // namespace

LevyModel::LevyModel(Family family, std::string name) : family_(std::move(family)), name_(std::move(name)) {
    std::visit([](const auto& f) { validate(f); }, family_);
    if (const auto* c = std::get_if<Composite>(&family_)) {
        double mass = 0.0;
        try {
            mass = levy_mass(*this);
        } catch (const QuadratureError& e) {
            throw ValidationError(std::string("composite: int (x^2 ^ 1) Pi(dx) is not finite: ") + e.what());
        }
        require(std::isfinite(mass) && mass >= 0, "composite: int (x^2 ^ 1) Pi(dx) is not finite");
        (void)c;
    }
}

LevyModel LevyModel::renamed(std::string name) const { return LevyModel(family_, std::move(name)); }

std::string LevyModel::family_name() const {
    static const char* names[] = {"brownian", "stable", "tempered_stable", "compound_poisson", "subordinated",
                                  "composite"};
    return names[family_.index()];
}

LevyModel brownian(double drift, double sigma, std::string name) {
    return LevyModel(BrownianWithDrift{drift, sigma}, std::move(name));
}

LevyModel stable(double alpha, double beta, double scale, double drift, std::string name) {
    return LevyModel(Stable{alpha, beta, scale, drift}, std::move(name));
}

LevyModel tempered_stable(const TemperedStable& p, std::string name) { return LevyModel(p, std::move(name)); }

LevyModel compound_poisson(double drift, double rate, JumpDistribution jumps, std::string name) {
    return LevyModel(CompoundPoissonDrift{drift, rate, std::move(jumps)}, std::move(name));
}

LevyModel subordinated(LevyModel outer, LevyModel inner, double drift, std::string name) {
    return LevyModel(Subordinated{std::make_shared<const LevyModel>(std::move(outer)),
                                  std::make_shared<const LevyModel>(std::move(inner)), drift},
                     std::move(name));
}

LevyModel composite(double gamma, double sigma, LevyDensity density, std::string name) {
    return LevyModel(Composite{gamma, sigma, std::make_shared<const LevyDensity>(std::move(density))},
                     std::move(name));
}

LevyModel normal_inverse_gaussian(double alpha, double beta, double delta, double mu, std::string name) {
    require(alpha > 0 && std::abs(beta) < alpha, "nig: need alpha > |beta|");
    require(delta > 0, "nig: delta must be positive");
    const double g = std::sqrt(alpha * alpha - beta * beta);
    TemperedStable ig;
    ig.c_plus = delta / std::sqrt(2.0 * num::kPi);
    ig.alpha_plus = 0.5;
    ig.lambda_plus = 0.5 * g * g;
    return subordinated(brownian(beta, 1.0, "nig_outer"), tempered_stable(ig, "inverse_gaussian"), mu,
                        std::move(name));
}

LevyModel gamma_process(double shape, double rate, std::string name) {
    require(shape > 0 && rate > 0, "gamma: shape and rate must be positive");
    TemperedStable t;
    t.c_plus = shape;
    t.lambda_plus = rate;
    return tempered_stable(t, std::move(name));
}

LevyModel variance_gamma(double c, double lambda_plus, double lambda_minus, std::string name) {
    require(c > 0 && lambda_plus > 0 && lambda_minus > 0, "variance_gamma: parameters must be positive");
    TemperedStable t;
    t.c_plus = t.c_minus = c;
    t.lambda_plus = lambda_plus;
    t.lambda_minus = lambda_minus;
    return tempered_stable(t, std::move(name));
}

LevyDensity tempered_density(const TemperedStable& p) {
    LevyDensity d;
    d.plus = [c = p.c_plus, a = p.alpha_plus, l = p.lambda_plus](double x) {
        return c == 0 ? 0.0 : c * std::pow(x, -1.0 - a) * std::exp(-l * x);
    };
    d.minus = [c = p.c_minus, a = p.alpha_minus, l = p.lambda_minus](double x) {
        return c == 0 ? 0.0 : c * std::pow(x, -1.0 - a) * std::exp(-l * x);
    };
    double pz = 0.0, pinf = num::kInf;
    auto side = [&](double c, double a, double l) {
        if (c == 0) return;
        pz = std::max(pz, a);
        if (l == 0) pinf = std::min(pinf, a);
    };
    side(p.c_plus, p.alpha_plus, p.lambda_plus);
    side(p.c_minus, p.alpha_minus, p.lambda_minus);
    d.power_zero = pz;
    d.power_inf = pinf;
    d.label = "tempered_stable";
    return d;
}

OscillatingExample oscillating_example(double h) {
    require(h > 0 && h < std::exp(-1.0), "oscillating: h must lie in (0, 1/e)");
    auto u = [](double x) { return std::sin(std::log(-std::log(x))) / std::log(x); };
    const double uh = u(h);
    const double kplus = (1.0 + uh) / h;
    LevyDensity d;
    d.plus = [h, kplus, u](double y) {
        if (y >= h) return kplus * std::exp(-(y - h));
        const double ly = std::log(y);
        const double L = std::log(-ly);
        return (1.0 + u(y)) / (y * y) - (std::cos(L) - std::sin(L)) / (y * y * ly * ly);
    };
    d.minus = [h](double y) { return y >= h ? std::exp(-(y - h)) / h : 1.0 / (y * y); };
    d.plus_x2 = [h, kplus, u](double y) {
        if (y >= h) return y * y * kplus * std::exp(-(y - h));
        const double ly = std::log(y);
        const double L = std::log(-ly);
        return 1.0 + u(y) - (std::cos(L) - std::sin(L)) / (ly * ly);
    };
    d.minus_x2 = [h](double y) { return y >= h ? y * y * std::exp(-(y - h)) / h : 1.0; };
    d.power_zero = 1.0;
    d.power_inf = num::kInf;
    d.breaks = {h};
    d.label = "oscillating";
    const double D = (uh / h) * ((h + 1.0) - 2.0 * std::exp(h - 1.0));
    const double gamma = -uh - std::cos(std::log(-std::log(h))) + D;
    return {std::move(d), gamma, h};
}

LevyModel oscillating_model(double h, std::string name) {
    OscillatingExample ex = oscillating_example(h);
    return composite(ex.gamma, 0.0, std::move(ex.density), std::move(name));
}

LevyModel negate(const LevyModel& model) {
    struct V {
        LevyModel::Family operator()(const BrownianWithDrift& b) const { return BrownianWithDrift{-b.drift, b.sigma}; }
        LevyModel::Family operator()(const Stable& s) const { return Stable{s.alpha, -s.beta, s.scale, -s.drift}; }
        LevyModel::Family operator()(const TemperedStable& t) const {
            return TemperedStable{t.c_minus,     t.c_plus,     t.alpha_minus, t.alpha_plus,
                                  t.lambda_minus, t.lambda_plus, -t.drift};
        }
        LevyModel::Family operator()(const CompoundPoissonDrift& c) const {
            return CompoundPoissonDrift{-c.drift, c.rate, c.jumps.negated()};
        }
        LevyModel::Family operator()(const Subordinated& s) const {
            return Subordinated{std::make_shared<const LevyModel>(negate(*s.outer)), s.inner, -s.drift};
        }
        LevyModel::Family operator()(const Composite& c) const {
            auto d = std::make_shared<LevyDensity>(*c.density);
            std::swap(d->plus, d->minus);
            std::swap(d->plus_x2, d->minus_x2);
            return Composite{-c.gamma, c.sigma, d};
        }
    };
    return LevyModel(std::visit(V{}, model.family()), model.name().empty() ? "" : "neg_" + model.name());
}

}  // namespace levysup
