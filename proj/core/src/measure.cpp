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
#include "levysup/measure.hpp"

#include <algorithm>
#include <cmath>

#include "levysup/error.hpp"
#include "numerics.hpp"

namespace levysup {

using cplx = std::complex<double>;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------------------------
// One half-line of a tempered stable measure: c x^{-1-a} e^{-l x}.

struct Side {
    double c = 0, a = 0, l = 0;
    bool active() const { return c > 0; }
};

Side plus_side(const TemperedStable& t) { return {t.c_plus, t.alpha_plus, t.lambda_plus}; }
Side minus_side(const TemperedStable& t) { return {t.c_minus, t.alpha_minus, t.lambda_minus}; }

double side_tail(const Side& s, double x) {
    if (!s.active()) return 0.0;
    if (s.l == 0) return s.c * std::pow(x, -s.a) / s.a;
    return s.c * std::pow(s.l, s.a) * num::upper_gamma(-s.a, s.l * x);
}

// int_x^1 y Pi(dy), 0 < x <= 1.
double side_m1_to_one(const Side& s, double x) {
    if (!s.active() || x >= 1.0) return 0.0;
    if (s.l == 0) {
        if (s.a == 1) return -s.c * std::log(x);
        return s.c * (1.0 - std::pow(x, 1.0 - s.a)) / (1.0 - s.a);
    }
    return s.c * std::pow(s.l, s.a - 1.0) * (num::upper_gamma(1.0 - s.a, s.l * x) - num::upper_gamma(1.0 - s.a, s.l));
}

// int_0^1 y Pi(dy) for a < 1.
double side_m1_below_one(const Side& s) {
    if (!s.active()) return 0.0;
    if (s.l == 0) return s.c / (1.0 - s.a);
    return s.c * std::pow(s.l, s.a - 1.0) * num::lower_gamma(1.0 - s.a, s.l);
}

// int_1^inf y Pi(dy).
double side_m1_above_one(const Side& s) {
    if (!s.active()) return 0.0;
    if (s.l == 0) return s.a > 1 ? s.c / (s.a - 1.0) : num::kInf;
    return s.c * std::pow(s.l, s.a - 1.0) * num::upper_gamma(1.0 - s.a, s.l);
}

// int_0^x y^2 Pi(dy).
double side_v(const Side& s, double x) {
    if (!s.active()) return 0.0;
    if (s.l == 0) return s.c * std::pow(x, 2.0 - s.a) / (2.0 - s.a);
    return s.c * std::pow(s.l, s.a - 2.0) * num::lower_gamma(2.0 - s.a, s.l * x);
}

// int_0^inf (e^{theta y} - 1 - theta y 1{y<1}) Pi(dy).
cplx side_psi(const Side& s, cplx th) {
    if (!s.active() || th == cplx(0.0)) return 0.0;
    if (th.real() > s.l || (s.l == 0 && th.real() > 0))
        throw DomainError("exponent: theta outside the exponential moment strip");
    const double c = s.c, a = s.a, l = s.l;
    const cplx z = l - th;
    if (a == 1.0) {
        if (l == 0) return c * (-th * std::log(-th) + th * (1.0 - num::kEulerGamma));
        return c * (z * std::log(z / l) + th + th * boost::math::expint(1, l));
    }
    if (a == 0.0) return -c * std::log(z / l) - th * c * side_m1_below_one({1.0, a, l});
    const double g = std::tgamma(-a);
    if (a < 1.0) {
        const double lp = l == 0 ? 0.0 : std::pow(l, a);
        return c * g * (std::pow(z, a) - lp) - th * side_m1_below_one(s);
    }
    const double lp = l == 0 ? 0.0 : std::pow(l, a);
    const double lp1 = l == 0 ? 0.0 : std::pow(l, a - 1.0);
    return c * g * (std::pow(z, a) - lp + th * a * lp1) + th * side_m1_above_one(s);
}

double side_large_moment_index(const Side& s) {
    if (!s.active() || s.l > 0) return num::kInf;
    return s.a;
}

bool ts_bounded_variation(const TemperedStable& t) {
    auto ok = [](const Side& s) { return !s.active() || s.a < 1.0; };
    return ok(plus_side(t)) && ok(minus_side(t));
}

double ts_gamma(const TemperedStable& t) {
    if (!ts_bounded_variation(t)) return t.drift;
    return t.drift + side_m1_below_one(plus_side(t)) - side_m1_below_one(minus_side(t));
}

// ---------------------------------------------------------------------------------------------
// Subordinated Brownian motion: Pi_X(dx) = int P(Y_s in dx) Pi_S(ds).

struct OuterBm {
    double b, sigma;
};

OuterBm outer_bm(const Subordinated& s) {
    const auto* bm = s.outer->as<BrownianWithDrift>();
    if (!bm) throw UnsupportedError("measure of a subordinated model needs a Brownian outer process");
    return {bm->drift, bm->sigma};
}

OuterBm outer_bm_diffusive(const Subordinated& s) {
    const OuterBm o = outer_bm(s);
    if (o.sigma == 0) throw UnsupportedError("measure of a subordinated model needs sigma > 0 in the outer process");
    return o;
}

// int g(s) Pi_S(ds) over the jump measure of a subordinator.
double against_jumps(const LevyModel& S, const num::RealFn& g) {
    auto density_integral = [&](const num::RealFn& dens, double lo) {
        auto h = [&](double y) { return g(y) * dens(y); };
        if (lo > 0) return num::to_inf(h, lo).value;
        return num::to_zero(h, 1.0).value + num::to_inf(h, 1.0).value;
    };
    auto ts_integral = [&](const TemperedStable& t) {
        const Side sd = plus_side(t);
        if (!sd.active()) return 0.0;
        return density_integral([sd](double y) { return sd.c * std::pow(y, -1.0 - sd.a) * std::exp(-sd.l * y); }, 0.0);
    };
    return std::visit(
        overloaded{[](const BrownianWithDrift&) { return 0.0; },
                   [&](const Stable& st) { return ts_integral(detail::stable_as_tempered(st)); },
                   [&](const TemperedStable& t) { return ts_integral(t); },
                   [&](const CompoundPoissonDrift& cp) {
                       if (cp.rate == 0) return 0.0;
                       const auto& law = cp.jumps.law();
                       if (const auto* a = std::get_if<Atoms>(&law)) {
                           double s = 0.0;
                           for (std::size_t i = 0; i < a->values.size(); ++i) s += a->probs[i] * g(a->values[i]);
                           return cp.rate * s;
                       }
                       if (const auto* d = std::get_if<DoubleExponential>(&law)) {
                           const double r = d->rate_up;
                           return cp.rate * density_integral([r](double y) { return r * std::exp(-r * y); }, 0.0);
                       }
                       if (const auto* p = std::get_if<Pareto>(&law)) {
                           const double a = p->shape, sc = p->scale;
                           return cp.rate * density_integral(
                                                [a, sc](double y) { return a * std::pow(sc, a) * std::pow(y, -a - 1.0); }, sc);
                       }
                       throw UnsupportedError("subordinator jump law not supported for measure evaluation");
                   },
                   [](const Subordinated&) -> double {
                       throw UnsupportedError("nested subordination not supported for measure evaluation");
                   },
                   [](const Composite&) -> double {
                       throw UnsupportedError("composite subordinator not supported for measure evaluation");
                   }},
        S.family());
}

double sub_tail_plus(const Subordinated& s, double x) {
    const OuterBm o = outer_bm_diffusive(s);
    return against_jumps(*s.inner, [&](double t) {
        return 1.0 - num::norm_cdf((x - o.b * t) / (o.sigma * std::sqrt(t)));
    });
}

double sub_gamma(const Subordinated& s) {
    const OuterBm o = outer_bm(s);
    const double d = linear_drift(*s.inner);
    double jumps = 0.0;
    if (o.sigma > 0) {
        jumps = against_jumps(*s.inner, [&](double t) {
            const double sd = o.sigma * std::sqrt(t);
            return num::normal_mean_between(o.b * t, sd, -1.0, 1.0);
        });
    } else {
        jumps = against_jumps(*s.inner, [&](double t) { return std::abs(o.b * t) < 1.0 ? o.b * t : 0.0; });
    }
    return s.drift + o.b * d + jumps;
}

// ---------------------------------------------------------------------------------------------
// Composite measure helpers.

// y^p f(y) for one half-line, through the x^2-weighted form when it is available.
double weighted(const LevyDensity& d, bool plus, double y, double p) {
    const auto& x2 = plus ? d.plus_x2 : d.minus_x2;
    if (x2) return x2(y) * std::pow(y, p - 2.0);
    const auto& f = plus ? d.plus : d.minus;
    return f ? std::pow(y, p) * f(y) : 0.0;
}

double weighted_sum(const LevyDensity& d, double y, double p) {
    return weighted(d, true, y, p) + weighted(d, false, y, p);
}

double weighted_diff(const LevyDensity& d, double y, double p) {
    if (d.plus_x2 && d.minus_x2) return (d.plus_x2(y) - d.minus_x2(y)) * std::pow(y, p - 2.0);
    return weighted(d, true, y, p) - weighted(d, false, y, p);
}

// int_a^b g(y) dy / y, split at the declared breaks. Integrands carry the factor y so that
// they stay finite where the density overflows.
double span(const LevyDensity& d, const num::RealFn& g, double a, double b) {
    double total = 0.0, lo = a;
    for (double br : d.breaks) {
        if (br > lo && br < b) {
            total += num::gk_dlog(g, lo, br).value;
            lo = br;
        }
    }
    return total + num::gk_dlog(g, lo, b).value;
}

double from_zero(const LevyDensity& d, const num::RealFn& g, double b) {
    double first = b;
    for (double br : d.breaks) first = std::min(first, br);
    return num::to_zero(g, first, 1e-12, 320, true).value + span(d, g, first, b);
}

double to_infinity(const LevyDensity& d, const num::RealFn& g, double a) {
    double last = a;
    for (double br : d.breaks) last = std::max(last, br);
    return span(d, g, a, last) + num::to_inf(g, last, 1e-12, 320, true).value;
}

double comp_tail(const LevyDensity& d, bool plus, double x) {
    const auto& f = plus ? d.plus : d.minus;
    if (!f) return 0.0;
    auto g = [&](double y) { return weighted(d, plus, y, 1.0); };
    if (x < 1.0) return span(d, g, x, 1.0) + to_infinity(d, g, 1.0);
    return to_infinity(d, g, x);
}

// int_a^inf f(y) e^{iuy} dy over half periods, with alternating-series acceleration when the
// pieces decay slowly.
cplx fourier_tail(const std::function<double(double)>& f, double a, double u) {
    if (!f) return 0.0;
    const double hp = num::kPi / std::abs(u);
    cplx sum = 0.0;
    std::vector<cplx> partial;
    int quiet = 0;
    const int max_pieces = 20000;
    for (int j = 0; j < max_pieces; ++j) {
        const double lo = a + j * hp, hi = lo + hp;
        const double re = num::gk([&](double y) { return f(y) * std::cos(u * y); }, lo, hi, 1e-13).value;
        const double im = num::gk([&](double y) { return f(y) * std::sin(u * y); }, lo, hi, 1e-13).value;
        const double mass = num::gk([&](double y) { return std::abs(f(y)); }, lo, hi, 1e-13).value;
        sum += cplx(re, im);
        partial.push_back(sum);
        if (mass <= 1e-15 * std::max(1.0, std::abs(sum))) {
            if (++quiet >= 3) return sum;
        } else {
            quiet = 0;
        }
    }
    // Repeated averaging of the last partial sums.
    std::vector<cplx> t(partial.end() - 24, partial.end());
    while (t.size() > 2) {
        for (std::size_t i = 0; i + 1 < t.size(); ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
        t.pop_back();
    }
    const double err = std::abs(t[1] - t[0]);
    if (err > 1e-8 * std::max(1.0, std::abs(t[1])))
        throw QuadratureError("oscillatory tail integral did not converge", err);
    return t[1];
}

cplx composite_exponent(const Composite& c, double u) {
    if (u == 0.0) return 0.0;
    const LevyDensity& d = *c.density;
    auto cosm1 = [u](double y) {
        const double s = std::sin(0.5 * u * y);
        return -2.0 * s * s;
    };
    auto sinm = [u](double y) {
        const double w = u * y;
        if (std::abs(w) < 1e-3) {
            const double w3 = w * w * w;
            return -w3 / 6.0 + w3 * w * w / 120.0;
        }
        return std::sin(w) - w;
    };
    const double y0 = std::min(1.0, 1.0 / std::abs(u));
    auto re_f = [&](double y) { return cosm1(y) * weighted_sum(d, y, 1.0); };
    auto im_f = [&](double y) { return sinm(y) * weighted_diff(d, y, 1.0); };
    double re = from_zero(d, re_f, y0);
    double im = from_zero(d, im_f, y0);
    if (y0 < 1.0) {
        re += span(d, re_f, y0, 1.0);
        im += span(d, im_f, y0, 1.0);
    }
    const cplx fp = fourier_tail(d.plus, 1.0, u);
    const cplx fm = fourier_tail(d.minus, 1.0, u);
    re += fp.real() + fm.real() - comp_tail(d, true, 1.0) - comp_tail(d, false, 1.0);
    im += fp.imag() - fm.imag();
    return cplx(-0.5 * c.sigma * c.sigma * u * u + re, c.gamma * u + im);
}

// Finiteness proxy for int |x|^beta Pi(dx) near 0 (small = true) or near infinity.
bool composite_moment_finite(const LevyDensity& d, double beta, bool small) {
    auto g = [&](double y) { return weighted_sum(d, y, beta + 1.0); };
    // Adjacent log-equal windows: the integral is finite when the outer window carries less.
    if (small) {
        const double outer = num::gk_dlog(g, 1e-12, 1e-9, 1e-10).value;
        const double inner = num::gk_dlog(g, 1e-9, 1e-6, 1e-10).value;
        return outer < inner || (outer == 0 && inner == 0);
    }
    const double inner = num::gk_dlog(g, 1e3, 1e6, 1e-10).value;
    const double outer = num::gk_dlog(g, 1e6, 1e9, 1e-10).value;
    return outer < inner || (outer == 0 && inner == 0);
}

void check_x(double x, bool unit) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError("x must be positive");
    if (unit && !(x < 1)) throw DomainError("x must lie in (0, 1)");
}

double tail_plus_impl(const LevyModel& model, double x) {
    return std::visit(
        overloaded{[](const BrownianWithDrift&) { return 0.0; },
                   [x](const Stable& s) { return side_tail(plus_side(detail::stable_as_tempered(s)), x); },
                   [x](const TemperedStable& t) { return side_tail(plus_side(t), x); },
                   [x](const CompoundPoissonDrift& c) { return c.rate == 0 ? 0.0 : c.rate * c.jumps.prob_above(x); },
                   [x](const Subordinated& s) { return sub_tail_plus(s, x); },
                   [x](const Composite& c) { return comp_tail(*c.density, true, x); }},
        model.family());
}

double truncated_mean_impl(const LevyModel& model, double x) {
    return std::visit(
        overloaded{[](const BrownianWithDrift& b) { return b.drift; },
                   [&](const Stable& s) {
                       const TemperedStable t = detail::stable_as_tempered(s);
                       return ts_gamma(t) - side_m1_to_one(plus_side(t), x) + side_m1_to_one(minus_side(t), x);
                   },
                   [&](const TemperedStable& t) {
                       return ts_gamma(t) - side_m1_to_one(plus_side(t), x) + side_m1_to_one(minus_side(t), x);
                   },
                   [&](const CompoundPoissonDrift& c) {
                       return lk_gamma(model) - (c.rate == 0 ? 0.0 : c.rate * c.jumps.partial_mean(x, 1.0));
                   },
                   [&](const Subordinated& s) {
                       const OuterBm o = outer_bm_diffusive(s);
                       const double cut = against_jumps(*s.inner, [&](double t) {
                           const double sd = o.sigma * std::sqrt(t);
                           return num::normal_mean_between(o.b * t, sd, x, 1.0) +
                                  num::normal_mean_between(o.b * t, sd, -1.0, -x);
                       });
                       return sub_gamma(s) - cut;
                   },
                   [&](const Composite& c) {
                       const LevyDensity& d = *c.density;
                       auto k = [&](double y) { return weighted_diff(d, y, 2.0); };
                       return c.gamma - span(d, k, x, 1.0);
                   }},
        model.family());
}

double truncated_variance_impl(const LevyModel& model, double x) {
    return std::visit(
        overloaded{[](const BrownianWithDrift& b) { return b.sigma * b.sigma; },
                   [x](const Stable& s) {
                       const TemperedStable t = detail::stable_as_tempered(s);
                       return side_v(plus_side(t), x) + side_v(minus_side(t), x);
                   },
                   [x](const TemperedStable& t) { return side_v(plus_side(t), x) + side_v(minus_side(t), x); },
                   [x](const CompoundPoissonDrift& c) {
                       return c.rate == 0 ? 0.0 : c.rate * c.jumps.partial_second_moment(x);
                   },
                   [x](const Subordinated& s) {
                       const OuterBm o = outer_bm_diffusive(s);
                       const double d = linear_drift(*s.inner);
                       const double j = against_jumps(*s.inner, [&](double t) {
                           return num::normal_second_between(o.b * t, o.sigma * std::sqrt(t), -x, x);
                       });
                       return o.sigma * o.sigma * d + j;
                   },
                   [x](const Composite& c) {
                       const LevyDensity& d = *c.density;
                       auto g = [&](double y) { return weighted_sum(d, y, 3.0); };
                       return c.sigma * c.sigma + from_zero(d, g, x);
                   }},
        model.family());
}

}  // namespace

namespace detail {

TemperedStable stable_as_tempered(const Stable& s) {
    const double a = s.alpha;
    double total;
    if (a == 1.0) {
        total = s.scale / num::kPi;
    } else {
        const double half = 0.5 * std::pow(s.scale, a);
        total = half / (-std::tgamma(-a) * std::cos(num::kPi * a / 2.0));
    }
    TemperedStable t;
    t.c_plus = 0.5 * (1.0 + s.beta) * total;
    t.c_minus = 0.5 * (1.0 - s.beta) * total;
    t.alpha_plus = t.alpha_minus = a;
    const double diff = t.c_plus - t.c_minus;
    if (a < 1.0) {
        t.drift = s.drift;
    } else if (a > 1.0) {
        t.drift = s.drift - diff / (a - 1.0);
    } else {
        t.drift = s.drift - diff * (1.0 - num::kEulerGamma);
    }
    return t;
}

Composite subordinated_view(const Subordinated& s) {
    const OuterBm o = outer_bm_diffusive(s);
    auto inner = s.inner;
    auto kernel = [o, inner](double x) {
        return against_jumps(*inner, [&](double t) {
            const double sd = o.sigma * std::sqrt(t);
            return num::norm_pdf((x - o.b * t) / sd) / sd;
        });
    };
    LevyDensity d;
    d.plus = kernel;
    d.minus = [kernel](double x) { return kernel(-x); };
    const DiagnosticIndices ix = indices(*s.inner);
    d.power_zero = std::min(2.0, 2.0 * ix.beta0);
    d.power_inf = o.b != 0 ? ix.beta_inf : 2.0 * ix.beta_inf;
    d.label = "subordinated_view";
    return Composite{sub_gamma(s), o.sigma * std::sqrt(linear_drift(*s.inner)),
                     std::make_shared<const LevyDensity>(std::move(d))};
}

}  // namespace detail

cplx exponent(const LevyModel& model, cplx theta) {
    if (theta == cplx(0.0)) return 0.0;
    const bool imag_axis = theta.real() == 0.0;
    return std::visit(
        overloaded{[&](const BrownianWithDrift& b) { return b.drift * theta + 0.5 * b.sigma * b.sigma * theta * theta; },
                   [&](const Stable& s) -> cplx {
                       if (!imag_axis) {
                           const TemperedStable t = detail::stable_as_tempered(s);
                           return ts_gamma(t) * theta + side_psi(plus_side(t), theta) + side_psi(minus_side(t), -theta);
                       }
                       const double u = theta.imag(), au = std::abs(u), sg = u > 0 ? 1.0 : -1.0;
                       if (s.alpha == 1.0) {
                           return cplx(-0.5 * s.scale * au, s.drift * u - 0.5 * s.scale * au * s.beta * (2.0 / num::kPi) * sg * std::log(au));
                       }
                       const double h = 0.5 * std::pow(s.scale, s.alpha) * std::pow(au, s.alpha);
                       return cplx(-h, s.drift * u + h * s.beta * sg * std::tan(num::kPi * s.alpha / 2.0));
                   },
                   [&](const TemperedStable& t) {
                       return ts_gamma(t) * theta + side_psi(plus_side(t), theta) + side_psi(minus_side(t), -theta);
                   },
                   [&](const CompoundPoissonDrift& c) {
                       return c.drift * theta + (c.rate == 0 ? cplx(0.0) : c.rate * (c.jumps.mgf(theta) - 1.0));
                   },
                   [&](const Subordinated& s) {
                       return exponent(*s.inner, exponent(*s.outer, theta)) + s.drift * theta;
                   },
                   [&](const Composite& c) -> cplx {
                       if (!imag_axis) throw DomainError("composite exponent is evaluated on the imaginary axis only");
                       return composite_exponent(c, theta.imag());
                   }},
        model.family());
}

cplx char_exponent(const LevyModel& model, double u) { return exponent(model, cplx(0.0, u)); }

double tail_plus(const LevyModel& model, double x) {
    check_x(x, false);
    return tail_plus_impl(model, x);
}

double tail_minus(const LevyModel& model, double x) {
    check_x(x, false);
    return tail_plus_impl(negate(model), x);
}

double truncated_mean(const LevyModel& model, double x) {
    check_x(x, true);
    return truncated_mean_impl(model, x);
}

double truncated_variance(const LevyModel& model, double x) {
    check_x(x, true);
    return truncated_variance_impl(model, x);
}

double lk_gamma(const LevyModel& model) {
    return std::visit(overloaded{[](const BrownianWithDrift& b) { return b.drift; },
                                 [](const Stable& s) { return ts_gamma(detail::stable_as_tempered(s)); },
                                 [](const TemperedStable& t) { return ts_gamma(t); },
                                 [](const CompoundPoissonDrift& c) {
                                     return c.drift + (c.rate == 0 ? 0.0 : c.rate * c.jumps.partial_mean(0.0, 1.0));
                                 },
                                 [](const Subordinated& s) { return sub_gamma(s); },
                                 [](const Composite& c) { return c.gamma; }},
                      model.family());
}

double gaussian_sigma(const LevyModel& model) {
    return std::visit(overloaded{[](const BrownianWithDrift& b) { return b.sigma; },
                                 [](const Subordinated& s) {
                                     const double so = gaussian_sigma(*s.outer);
                                     if (so == 0) return 0.0;
                                     const double d = linear_drift(*s.inner);
                                     return so * std::sqrt(std::max(d, 0.0));
                                 },
                                 [](const Composite& c) { return c.sigma; },
                                 [](const auto&) { return 0.0; }},
                      model.family());
}

bool bounded_variation(const LevyModel& model) {
    return std::visit(
        overloaded{[](const BrownianWithDrift& b) { return b.sigma == 0; },
                   [](const Stable& s) { return s.alpha < 1; },
                   [](const TemperedStable& t) { return ts_bounded_variation(t); },
                   [](const CompoundPoissonDrift&) { return true; },
                   [&](const Subordinated& s) {
                       if (gaussian_sigma(model) != 0) return false;
                       const double so = gaussian_sigma(*s.outer);
                       if (so == 0) return bounded_variation(*s.outer);
                       // Small jumps of size ~ sqrt(s): integrable iff int s^{1/2} Pi_S(ds) < inf.
                       const DiagnosticIndices ix = indices(*s.inner);
                       return ix.beta0 < 0.5;
                   },
                   [](const Composite& c) { return c.sigma == 0 && composite_moment_finite(*c.density, 1.0, true); }},
        model.family());
}

double linear_drift(const LevyModel& model) {
    if (!bounded_variation(model)) throw DomainError("linear drift is defined for bounded variation only");
    return std::visit(overloaded{[](const BrownianWithDrift& b) { return b.drift; },
                                 [](const Stable& s) { return s.drift; },
                                 [](const TemperedStable& t) { return t.drift; },
                                 [](const CompoundPoissonDrift& c) { return c.drift; },
                                 [](const Subordinated& s) {
                                     const double d = linear_drift(*s.inner);
                                     if (const auto* bm = s.outer->as<BrownianWithDrift>()) return s.drift + bm->drift * d;
                                     if (d != 0)
                                         throw UnsupportedError("linear drift of a subordinated process with a drifting subordinator");
                                     return s.drift;
                                 },
                                 [](const Composite& c) {
                                     const LevyDensity& d = *c.density;
                                     auto k = [&](double y) { return weighted_diff(d, y, 2.0); };
                                     return c.gamma - from_zero(d, k, 1.0);
                                 }},
                      model.family());
}

bool is_subordinator(const LevyModel& model) {
    return std::visit(
        overloaded{[](const BrownianWithDrift& b) { return b.sigma == 0 && b.drift >= 0; },
                   [](const Stable& s) { return s.alpha < 1 && s.beta == 1 && s.drift >= 0; },
                   [](const TemperedStable& t) { return t.c_minus == 0 && ts_bounded_variation(t) && t.drift >= 0; },
                   [](const CompoundPoissonDrift& c) { return c.drift >= 0 && (c.rate == 0 || !c.jumps.has_negative()); },
                   [](const Subordinated& s) { return is_subordinator(*s.outer) && s.drift >= 0; },
                   [&](const Composite& c) {
                       if (c.sigma != 0 || c.density->minus) return false;
                       return bounded_variation(model) && linear_drift(model) >= 0;
                   }},
        model.family());
}

double levy_mass(const LevyModel& model) {
    return std::visit(
        overloaded{[](const BrownianWithDrift&) { return 0.0; },
                   [&](const CompoundPoissonDrift& c) {
                       return c.rate == 0 ? 0.0
                                          : c.rate * (c.jumps.partial_second_moment(1.0) + c.jumps.prob_above(1.0) +
                                                      c.jumps.prob_below(1.0));
                   },
                   [&](const Composite& c) {
                       const LevyDensity& d = *c.density;
                       auto g = [&](double y) { return weighted_sum(d, y, 3.0); };
                       return from_zero(d, g, 1.0) + comp_tail(d, true, 1.0) + comp_tail(d, false, 1.0);
                   },
                   [&](const auto&) {
                       const double s2 = gaussian_sigma(model);
                       return truncated_variance_impl(model, 1.0) - s2 * s2 + tail_plus_impl(model, 1.0) +
                              tail_plus_impl(negate(model), 1.0);
                   }},
        model.family());
}

DiagnosticIndices indices(const LevyModel& model) {
    DiagnosticIndices ix = std::visit(
        overloaded{[](const BrownianWithDrift&) { return DiagnosticIndices{0.0, num::kInf, 0.0}; },
                   [](const Stable& s) { return DiagnosticIndices{s.alpha, s.alpha, 0.0}; },
                   [](const TemperedStable& t) {
                       const Side p = plus_side(t), m = minus_side(t);
                       double b0 = 0.0;
                       if (p.active()) b0 = std::max(b0, p.a);
                       if (m.active()) b0 = std::max(b0, m.a);
                       return DiagnosticIndices{b0, std::min(side_large_moment_index(p), side_large_moment_index(m)), 0.0};
                   },
                   [](const CompoundPoissonDrift& c) {
                       return DiagnosticIndices{0.0, c.rate > 0 ? c.jumps.moment_index() : num::kInf, 0.0};
                   },
                   [](const Subordinated& s) {
                       const auto* bm = s.outer->as<BrownianWithDrift>();
                       if (!bm) throw UnsupportedError("indices of a subordinated model need a Brownian outer process");
                       const DiagnosticIndices in = indices(*s.inner);
                       if (bm->sigma == 0) {
                           if (bm->drift == 0) return DiagnosticIndices{0.0, num::kInf, 0.0};
                           return DiagnosticIndices{in.beta0, in.beta_inf, 0.0};
                       }
                       return DiagnosticIndices{std::min(2.0, 2.0 * in.beta0),
                                                bm->drift != 0 ? in.beta_inf : 2.0 * in.beta_inf, 0.0};
                   },
                   [](const Composite& c) {
                       const LevyDensity& d = *c.density;
                       double b0;
                       if (composite_moment_finite(d, 0.0, true)) {
                           b0 = 0.0;
                       } else {
                           double lo = 0.0, hi = 2.0;
                           while (hi - lo > 1e-3) {
                               const double mid = 0.5 * (lo + hi);
                               (composite_moment_finite(d, mid, true) ? hi : lo) = mid;
                           }
                           b0 = 0.5 * (lo + hi);
                       }
                       double binf;
                       if (composite_moment_finite(d, 20.0, false)) {
                           binf = num::kInf;
                       } else if (!composite_moment_finite(d, 0.0, false)) {
                           binf = 0.0;
                       } else {
                           double lo = 0.0, hi = 20.0;
                           while (hi - lo > 1e-3) {
                               const double mid = 0.5 * (lo + hi);
                               (composite_moment_finite(d, mid, false) ? lo : hi) = mid;
                           }
                           binf = 0.5 * (lo + hi);
                       }
                       return DiagnosticIndices{b0, binf, 0.0};
                   }},
        model.family());
    if (gaussian_sigma(model) != 0) {
        ix.alpha = 2.0;
    } else if (bounded_variation(model) && linear_drift(model) != 0) {
        ix.alpha = 1.0;
    } else {
        ix.alpha = ix.beta0;
    }
    return ix;
}

}  // namespace levysup
