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
#include "levysup/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "levysup/error.hpp"
#include "levysup/measure.hpp"
#include "numerics.hpp"

namespace levysup {

namespace {

using cplx = std::complex<double>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Total Levy mass C+ + C- of the unit-scale (half-scale 1) strictly stable law.
double unit_stable_mass(double alpha) {
    if (alpha == 1.0) return 1.0 / num::kPi;
    return 1.0 / (-2.0 * std::tgamma(-alpha) * std::cos(num::kPi * alpha / 2.0));
}

ZoomClass make(LimitKind kind, double alpha, double rho, double scale, std::string rule, std::string why) {
    ZoomClass z;
    z.kind = kind;
    z.alpha = alpha;
    z.rho = rho;
    z.scale = scale;
    z.rule = std::move(rule);
    z.justification = std::move(why);
    return z;
}

ZoomClass brownian_limit(double sigma, std::string rule, std::string why) {
    return make(LimitKind::Brownian, 2.0, 0.5, sigma, std::move(rule), std::move(why));
}

ZoomClass drift_limit(int sign, double slope, std::string rule, std::string why) {
    ZoomClass z = make(LimitKind::LinearDrift, 1.0, sign > 0 ? 1.0 : 0.0, slope, std::move(rule), std::move(why));
    z.drift_sign = sign;
    return z;
}

ZoomClass stable_limit(double alpha, double beta, double scale, std::string rule, std::string why) {
    ZoomClass z = make(LimitKind::Stable, alpha, positivity_rho(alpha, beta), scale, std::move(rule), std::move(why));
    z.skew = beta;
    return z;
}

ZoomClass cauchy_limit(double half_scale, double drift, std::string rule, std::string why) {
    const double rho = 0.5 + std::atan(2.0 * drift / half_scale) / num::kPi;
    ZoomClass z = make(LimitKind::Cauchy, 1.0, rho, half_scale, std::move(rule), std::move(why));
    z.cauchy_drift = drift;
    return z;
}

ZoomClass no_limit(std::string rule, std::string reason) {
    ZoomClass z = make(LimitKind::NoLimit, 0.0, 0.5, 1.0, std::move(rule), reason);
    z.reason = std::move(reason);
    return z;
}

ZoomClass undetermined(std::string rule, std::string reason) {
    ZoomClass z = make(LimitKind::Undetermined, 0.0, 0.5, 1.0, std::move(rule), reason);
    z.reason = std::move(reason);
    return z;
}

// -------------------------------------------------------------------------------------------
// Tempered stable table.

ZoomClass classify_tempered(const TemperedStable& t, const LevyModel& model) {
    const double ap = t.c_plus > 0 ? t.alpha_plus : 0.0;
    const double am = t.c_minus > 0 ? t.alpha_minus : 0.0;
    const double top = std::max(ap, am);
    if (top <= 0) {
        return no_limit("c:tempered-stable/no-limit",
                        "alpha+ = " + fmt(ap) + ", alpha- = " + fmt(am) + " <= 0: jump intensity too small");
    }
    if (top != 1.0) {
        double mass = 0.0, beta;
        if (ap == am) {
            mass = t.c_plus + t.c_minus;
            beta = (t.c_plus - t.c_minus) / mass;
        } else if (ap > am) {
            mass = t.c_plus;
            beta = 1.0;
        } else {
            mass = t.c_minus;
            beta = -1.0;
        }
        const double scale = std::pow(mass / unit_stable_mass(top), 1.0 / top);
        std::string why = "dominant index " + fmt(top) + (ap == am ? " on both sides" : ap > am ? " on the positive side"
                                                                                          : " on the negative side");
        if (ap != am) why += ": one-sided jumps in the limit";
        return stable_limit(top, beta, scale, "c:tempered-stable/stable", why);
    }
    // Index 1.
    if (ap == 1.0 && am == 1.0 && t.c_plus == t.c_minus) {
        const double c = t.c_plus;
        double integral = 0.0;
        if (t.lambda_plus != t.lambda_minus) {
            auto f = [&](double y) { return (std::exp(-t.lambda_plus * y) - std::exp(-t.lambda_minus * y)) / y; };
            integral = num::gk(f, 0.0, 1.0).value;
        }
        const double m0 = lk_gamma(model) - c * integral;
        return cauchy_limit(2.0 * num::kPi * c, m0, "c:tempered-stable/cauchy",
                            "alpha+ = alpha- = 1 and c+ = c- = " + fmt(c) + "; limiting drift " + fmt(m0));
    }
    const bool plus_dominant = (ap == 1.0 && am < 1.0) || (ap == 1.0 && am == 1.0 && t.c_plus > t.c_minus);
    const int sign = plus_dominant ? -1 : 1;
    ZoomClass z = drift_limit(sign, 1.0, "c:tempered-stable/remark-1-drift",
                              std::string("index 1 with dominant ") + (plus_dominant ? "positive" : "negative") +
                                  " jumps and unbounded variation: the compensating drift wins, so the limit is a "
                                  "linear drift of sign " + (sign > 0 ? "+" : "-"));
    z.calibrated = true;
    return z;
}

// -------------------------------------------------------------------------------------------
// Tail-ratio rules for generic models.

ZoomClass classify_by_tails(const LevyModel& model) {
    TailEvidence ev;
    for (int k = 2; k <= 8; ++k) {
        const double x = std::pow(10.0, -k);
        const double p = tail_plus(model, x), m = tail_minus(model, x);
        ev.x.push_back(x);
        ev.tail_plus.push_back(p);
        ev.tail_minus.push_back(m);
        ev.ratio.push_back(m > 0 ? p / m : (p > 0 ? num::kInf : 1.0));
    }
    for (std::size_t i = 0; i + 1 < ev.x.size(); ++i) {
        const double a = ev.tail_plus[i] + ev.tail_minus[i], b = ev.tail_plus[i + 1] + ev.tail_minus[i + 1];
        ev.index.push_back(a > 0 && b > 0 ? std::log10(b / a) : 0.0);
    }
    auto last3 = [](const std::vector<double>& v) {
        return std::vector<double>(v.end() - 3, v.end());
    };
    auto settled = [](const std::vector<double>& v, double floor) {
        // Agreement within 5%: the spread of the three values, relative to their mean.
        const double mean = (v[0] + v[1] + v[2]) / 3.0;
        const double spread = std::max({v[0], v[1], v[2]}) - std::min({v[0], v[1], v[2]});
        return spread <= 0.05 * std::max(std::abs(mean), floor);
    };
    const auto idx = last3(ev.index);
    const double total_tail = ev.tail_plus.back() + ev.tail_minus.back();

    if (total_tail == 0.0 || std::max({idx[0], idx[1], idx[2]}) < 0.1) {
        ZoomClass z = no_limit("f:slowly-varying-tail", "Pi(x) is slowly varying at 0 and there is no drift or "
                                                        "Gaussian part");
        z.evidence = ev;
        return z;
    }
    if (!settled(idx, 0.1)) {
        ZoomClass z = undetermined("g:unresolved", "regular variation index of Pi(x) does not settle: " +
                                                       fmt(idx[0]) + ", " + fmt(idx[1]) + ", " + fmt(idx[2]));
        z.evidence = ev;
        return z;
    }
    double alpha = (idx[0] + idx[1] + idx[2]) / 3.0;
    if (std::abs(alpha - 1.0) <= 0.05) alpha = 1.0;
    if (std::abs(alpha - 2.0) <= 0.05) alpha = 2.0;
    if (alpha > 2.0) alpha = 2.0;

    const auto r = last3(ev.ratio);
    const bool plus_inf = std::isinf(r[0]) && std::isinf(r[1]) && std::isinf(r[2]);
    const bool minus_inf = r[0] == 0 && r[1] == 0 && r[2] == 0;
    const bool ratio_settled = plus_inf || minus_inf || settled(r, 0.0);
    const double ratio = plus_inf ? num::kInf : (r[0] + r[1] + r[2]) / 3.0;
    const std::string tails = "Pi(x) in RV_{-" + fmt(alpha) + "}, Pi+(x)/Pi-(x) -> " + fmt(ratio);

    ZoomClass z;
    if (alpha == 2.0) {
        const double lo = *std::min_element(r.begin(), r.end());
        const double hi = *std::max_element(r.begin(), r.end());
        if (lo > 0 && std::isfinite(hi)) {
            z = brownian_limit(1.0, "e:tail-ratio/alpha-2", tails);
        } else {
            z = undetermined("g:unresolved", tails + " with one vanishing side at index 2");
        }
    } else if (alpha == 1.0) {
        const double lo = *std::min_element(r.begin(), r.end());
        const double hi = *std::max_element(r.begin(), r.end());
        const bool bv = bounded_variation(model);
        if (lo > 1.05) {
            const int sign = bv ? 1 : -1;
            z = drift_limit(sign, 1.0, bv ? "e:tail-ratio/alpha-1-bv" : "e:tail-ratio/remark-1-drift",
                            tails + (bv ? "; bounded variation, positive drift"
                                        : "; unbounded variation, the compensating drift wins: negative drift"));
        } else if (hi < 1.0 / 1.05) {
            const int sign = bv ? -1 : 1;
            z = drift_limit(sign, 1.0, bv ? "e:tail-ratio/alpha-1-bv" : "e:tail-ratio/remark-1-drift",
                            tails + (bv ? "; bounded variation, negative drift"
                                        : "; unbounded variation, the compensating drift wins: positive drift"));
        } else if (lo >= 0.95 && hi <= 1.05) {
            for (std::size_t i = 0; i < ev.x.size(); ++i) {
                const double x = ev.x[i];
                ev.drift_ratio.push_back(truncated_mean(model, x) / (x * (ev.tail_plus[i] + ev.tail_minus[i])));
            }
            const auto L = last3(ev.drift_ratio);
            if (settled(L, 0.1)) {
                const double lim = (L[0] + L[1] + L[2]) / 3.0;
                // Unit representative: half-scale 1 and drift L / pi.
                z = cauchy_limit(1.0, lim / num::kPi, "e:tail-ratio/cauchy",
                                 tails + "; m(x)/(x Pi(x)) -> " + fmt(lim));
            } else {
                z = undetermined("g:oscillating-drift-ratio",
                                 tails + "; m(x)/(x Pi(x)) does not settle: " + fmt(L[0]) + ", " + fmt(L[1]) + ", " +
                                     fmt(L[2]));
            }
        } else {
            z = undetermined("g:unresolved", tails + " with a tail ratio that neither dominates nor balances");
        }
    } else {
        if (ratio_settled && (ratio > 0 || plus_inf)) {
            const double beta = plus_inf ? 1.0 : (ratio - 1.0) / (ratio + 1.0);
            z = stable_limit(alpha, beta, 1.0, "e:tail-ratio/stable", tails);
        } else if (ratio_settled && minus_inf) {
            z = stable_limit(alpha, -1.0, 1.0, "e:tail-ratio/stable", tails);
        } else {
            z = undetermined("g:unresolved", tails + " with a tail ratio that does not settle");
        }
    }
    z.evidence = ev;
    if (z.has_limit()) z.calibrated = true;
    return z;
}

// -------------------------------------------------------------------------------------------
// Subordination.

ZoomClass classify_subordinated(const Subordinated& s) {
    const ZoomClass y = classify(*s.outer);
    const ZoomClass sub = classify(*s.inner);
    if (!sub.has_limit()) {
        return no_limit("d:subordination", "the subordinator has no zooming-in limit (" + sub.justification + ")");
    }
    if (!y.has_limit()) {
        return undetermined("d:subordination", "the outer process has no zooming-in limit (" + y.justification + ")");
    }
    const double alpha = y.alpha * sub.alpha;
    const std::string why = "alpha = alpha_Y * alpha_S = " + fmt(y.alpha) + " * " + fmt(sub.alpha);
    if (alpha < 1.0 && s.drift != 0) {
        return drift_limit(s.drift > 0 ? 1 : -1, std::abs(s.drift), "d:subordination/drift",
                           why + " < 1, so the extra drift dominates");
    }
    const cplx psi = attractor_exponent(sub, attractor_exponent(y, cplx(0.0, 1.0)));
    ZoomClass z;
    if (alpha == 2.0) {
        z = brownian_limit(std::sqrt(-2.0 * psi.real()), "d:subordination", why);
    } else if (alpha == 1.0) {
        const double drift = psi.imag() + s.drift;
        if (y.kind == LimitKind::LinearDrift) {
            const double slope = psi.imag() + s.drift;
            if (slope == 0) return undetermined("d:subordination", why + " with cancelling drifts");
            z = drift_limit(slope > 0 ? 1 : -1, std::abs(slope), "d:subordination", why + "; drift limit");
        } else {
            z = cauchy_limit(-2.0 * psi.real(), drift, "d:subordination", why + "; Cauchy limit");
        }
    } else {
        const double h = -psi.real();
        const double scale = std::pow(2.0 * h, 1.0 / alpha);
        const double beta = std::clamp(psi.imag() / (h * std::tan(num::kPi * alpha / 2.0)), -1.0, 1.0);
        z = stable_limit(alpha, beta, scale, "d:subordination", why);
        z.rho = y.rho;
    }
    if (y.calibrated || sub.calibrated) z.calibrated = true;
    return z;
}

}  // namespace

std::string to_string(LimitKind kind) {
    switch (kind) {
        case LimitKind::Brownian: return "BrownianLimit";
        case LimitKind::LinearDrift: return "LinearDriftLimit";
        case LimitKind::Stable: return "StableLimit";
        case LimitKind::Cauchy: return "CauchyLimit";
        case LimitKind::NoLimit: return "NoLimit";
        case LimitKind::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

double positivity_rho(double alpha, double beta) {
    if (!(alpha > 0 && alpha <= 2)) throw DomainError("positivity_rho: alpha must lie in (0, 2]");
    if (!(beta >= -1 && beta <= 1)) throw DomainError("positivity_rho: beta must lie in [-1, 1]");
    if (alpha == 2.0) return 0.5;
    if (alpha == 1.0) {
        if (beta != 0) throw UnsupportedError("positivity_rho: alpha = 1 with beta != 0 is not strictly stable");
        return 0.5;
    }
    return 0.5 + std::atan(beta * std::tan(num::kPi * alpha / 2.0)) / (num::kPi * alpha);
}

double skew_from_rho(double alpha, double rho) {
    if (!(alpha > 0 && alpha < 2) || alpha == 1.0) throw DomainError("skew_from_rho: alpha must lie in (0,1) or (1,2)");
    const double b = std::tan(num::kPi * alpha * (rho - 0.5)) / std::tan(num::kPi * alpha / 2.0);
    if (!(b >= -1.0 - 1e-12 && b <= 1.0 + 1e-12)) throw DomainError("skew_from_rho: rho outside the admissible range");
    return std::clamp(b, -1.0, 1.0);
}

ZoomClass classify(const LevyModel& model) {
    auto finish = [&](ZoomClass z) {
        if (z.calibrated) z.source = std::make_shared<const LevyModel>(model);
        return z;
    };
    const double sigma = gaussian_sigma(model);
    if (sigma > 0) return finish(brownian_limit(sigma, "a:gaussian", "sigma = " + fmt(sigma) + " > 0"));
    const bool bv = bounded_variation(model);
    if (bv) {
        const double gp = linear_drift(model);
        if (gp != 0) {
            return finish(drift_limit(gp > 0 ? 1 : -1, std::abs(gp), "b:linear-drift",
                                      "bounded variation with gamma' = " + fmt(gp)));
        }
    }
    if (const auto* t = model.as<TemperedStable>()) return finish(classify_tempered(*t, model));
    if (const auto* s = model.as<Stable>()) {
        const TemperedStable t = detail::stable_as_tempered(*s);
        ZoomClass z = classify_tempered(t, model);
        if (z.kind == LimitKind::Stable) {
            z.scale = s->scale;
            z.skew = s->beta;
            z.rule = "c:stable";
            z.justification = "strictly stable part with alpha = " + fmt(s->alpha) + ", beta = " + fmt(s->beta);
        }
        return finish(z);
    }
    if (const auto* s = model.as<Subordinated>()) return finish(classify_subordinated(*s));
    if (model.as<CompoundPoissonDrift>() || model.as<BrownianWithDrift>()) {
        return finish(no_limit("f:slowly-varying-tail", "finite jump activity without drift or Gaussian part"));
    }
    return finish(classify_by_tails(model));
}

cplx attractor_exponent(const ZoomClass& zc, cplx theta) {
    switch (zc.kind) {
        case LimitKind::Brownian: return 0.5 * zc.scale * zc.scale * theta * theta;
        case LimitKind::LinearDrift: return static_cast<double>(zc.drift_sign) * zc.scale * theta;
        case LimitKind::Stable: {
            const double a = zc.alpha;
            const double h = 0.5 * std::pow(zc.scale, a);
            if (theta.real() != 0) {
                if (zc.skew != 1.0 || a >= 1) throw DomainError("attractor exponent: theta off the imaginary axis");
                return -h / std::cos(num::kPi * a / 2.0) * std::pow(-theta, a);
            }
            const double u = theta.imag(), au = std::abs(u), sg = u > 0 ? 1.0 : -1.0;
            if (u == 0) return 0.0;
            return cplx(-h * std::pow(au, a), h * std::pow(au, a) * zc.skew * sg * std::tan(num::kPi * a / 2.0));
        }
        case LimitKind::Cauchy: {
            if (theta.real() != 0) throw DomainError("attractor exponent: theta off the imaginary axis");
            const double u = theta.imag();
            return cplx(-0.5 * zc.scale * std::abs(u), zc.cauchy_drift * u);
        }
        default: throw UnsupportedError("attractor exponent: class has no limit");
    }
}

LevyModel attractor_model(const ZoomClass& zc) {
    switch (zc.kind) {
        case LimitKind::Brownian: return brownian(0.0, zc.scale, "attractor");
        case LimitKind::LinearDrift: return brownian(zc.drift_sign * zc.scale, 0.0, "attractor");
        case LimitKind::Stable: return stable(zc.alpha, zc.skew, zc.scale, 0.0, "attractor");
        case LimitKind::Cauchy: return stable(1.0, 0.0, zc.scale, zc.cauchy_drift, "attractor");
        default: throw UnsupportedError("attractor model: class has no limit");
    }
}

double scaling_bn(const ZoomClass& zc, double n) {
    if (!zc.has_limit()) throw UnsupportedError("scaling_bn: " + to_string(zc.kind) + " has no scaling sequence");
    if (!(n >= 1)) throw DomainError("scaling_bn: n must be >= 1");
    if (!zc.calibrated || !zc.source) return std::pow(n, 1.0 / zc.alpha) / zc.scale;
    const LevyModel& m = *zc.source;
    const double eps = 1.0 / n;
    std::function<double(double)> g;  // increasing in log a
    switch (zc.kind) {
        case LimitKind::Brownian:
            g = [&](double la) {
                const double a = std::exp(la);
                return std::log(a * a) - std::log(eps * truncated_variance(m, a));
            };
            break;
        case LimitKind::LinearDrift:
            g = [&](double la) {
                const double a = std::exp(la);
                return la - std::log(eps * std::abs(truncated_mean(m, a)));
            };
            break;
        case LimitKind::Stable:
        case LimitKind::Cauchy: {
            const double target = unit_stable_mass(zc.alpha) / zc.alpha;
            g = [&, target](double la) { return std::log(target) - std::log(eps * tail(m, std::exp(la))); };
            break;
        }
        default: break;
    }
    // m(a) or Pi(a) may vanish near a = 1; keep the bracket values finite for the solver.
    g = [raw = std::move(g)](double la) {
        const double v = raw(la);
        return std::isnan(v) ? 1e6 : std::clamp(v, -1e6, 1e6);
    };
    const double hi = std::log(1.0 - 1e-9);
    const double ghi = g(hi);
    if (!(ghi > 0)) throw DomainError("scaling_bn: calibration equation has no root below 1");
    double lo = hi - 2.0, glo = g(lo);
    while (!(glo < 0)) {
        lo -= 2.0;
        if (lo < std::log(1e-300)) throw DomainError("scaling_bn: calibration root below 1e-300");
        glo = g(lo);
    }
    boost::math::tools::eps_tolerance<double> tol(40);
    std::uintmax_t it = 200;
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, it);
    return 1.0 / std::exp(0.5 * (r.first + r.second));
}

}  // namespace levysup
