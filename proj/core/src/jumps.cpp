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
#include "levysup/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "levysup/error.hpp"
#include "levysup/rng.hpp"
#include "numerics.hpp"

namespace levysup {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using num::norm_cdf;
using num::norm_pdf;
using num::normal_mean_between;
using num::normal_second_between;

// E[Y; lo < Y < hi] for Y ~ Exp(r).
double exp_mean_between(double r, double lo, double hi) {
    auto g = [r](double y) { return std::isfinite(y) ? (y + 1.0 / r) * std::exp(-r * y) : 0.0; };
    return hi > lo ? g(lo) - g(hi) : 0.0;
}

// E[Y; lo < Y < hi] for Y ~ Pareto(a, s).
double pareto_mean_between(double a, double s, double lo, double hi) {
    lo = std::max(lo, s);
    if (!(hi > lo)) return 0.0;
    if (!std::isfinite(hi) && a <= 1.0) return num::kInf;
    if (a == 1.0) return a * s * std::log(hi / lo);
    const double h = std::isfinite(hi) ? std::pow(hi, 1.0 - a) : 0.0;
    return a * std::pow(s, a) * (std::pow(lo, 1.0 - a) - h) / (a - 1.0);
}

// int_1^inf e^{i w t} a t^{-a-1} dt via the contour t = 1 + i r (w > 0).
std::complex<double> pareto_fourier(double a, double w) {
    if (w == 0.0) return 1.0;
    const bool neg = w < 0;
    w = std::abs(w);
    const std::complex<double> I(0.0, 1.0);
    auto g = [&](double r) { return a * std::exp(-w * r) * std::pow(1.0 + I * r, -a - 1.0); };
    auto re = [&](double r) { return g(r).real(); };
    auto im = [&](double r) { return g(r).imag(); };
    const double cut = 1.0 / w;
    const std::complex<double> head(num::gk(re, 0.0, cut).value, num::gk(im, 0.0, cut).value);
    const std::complex<double> tail(num::to_inf(re, cut).value, num::to_inf(im, cut).value);
    std::complex<double> v = I * std::exp(I * w) * (head + tail);
    return neg ? std::conj(v) : v;
}

}  // namespace

JumpDistribution::JumpDistribution(Law law) : law_(std::move(law)) {
    std::visit(overloaded{
                   [](const Atoms& a) {
                       if (a.values.empty() || a.values.size() != a.probs.size())
                           throw ValidationError("atoms: values and probs must be non-empty and of equal length");
                       double sum = 0.0;
                       for (std::size_t i = 0; i < a.values.size(); ++i) {
                           if (!std::isfinite(a.values[i]) || a.values[i] == 0.0)
                               throw ValidationError("atoms: jump values must be finite and non-zero");
                           if (!(a.probs[i] >= 0.0)) throw ValidationError("atoms: negative probability");
                           sum += a.probs[i];
                       }
                       if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("atoms: probabilities must sum to 1");
                   },
                   [](const DoubleExponential& d) {
                       if (!(d.p_up >= 0 && d.p_up <= 1) || !(d.rate_up > 0) || !(d.rate_down > 0))
                           throw ValidationError("exponential jumps: need p_up in [0,1] and positive rates");
                   },
                   [](const Pareto& p) {
                       if (!(p.shape > 0) || !(p.scale > 0) || !(p.p_up >= 0 && p.p_up <= 1))
                           throw ValidationError("pareto jumps: need shape, scale > 0 and p_up in [0,1]");
                   },
                   [](const NormalJumps& n) {
                       if (!(n.sd > 0) || !std::isfinite(n.mean))
                           throw ValidationError("normal jumps: need sd > 0");
                   }},
               law_);
}

double JumpDistribution::prob_above(double x) const {
    return std::visit(overloaded{
                          [x](const Atoms& a) {
                              double s = 0.0;
                              for (std::size_t i = 0; i < a.values.size(); ++i)
                                  if (a.values[i] > x) s += a.probs[i];
                              return s;
                          },
                          [x](const DoubleExponential& d) { return d.p_up * std::exp(-d.rate_up * x); },
                          [x](const Pareto& p) {
                              return p.p_up * (x < p.scale ? 1.0 : std::pow(p.scale / x, p.shape));
                          },
                          [x](const NormalJumps& n) { return 1.0 - norm_cdf((x - n.mean) / n.sd); }},
                      law_);
}

double JumpDistribution::prob_below(double x) const { return negated().prob_above(x); }

double JumpDistribution::partial_mean(double lo, double hi) const {
    return std::visit(
        overloaded{[=](const Atoms& a) {
                       double s = 0.0;
                       for (std::size_t i = 0; i < a.values.size(); ++i) {
                           const double v = std::abs(a.values[i]);
                           if (v > lo && v < hi) s += a.probs[i] * a.values[i];
                       }
                       return s;
                   },
                   [=](const DoubleExponential& d) {
                       return d.p_up * exp_mean_between(d.rate_up, lo, hi) -
                              (1.0 - d.p_up) * exp_mean_between(d.rate_down, lo, hi);
                   },
                   [=](const Pareto& p) {
                       const double m = pareto_mean_between(p.shape, p.scale, lo, hi);
                       if (!std::isfinite(m)) {
                           if (p.p_up == 0.5) throw DomainError("pareto jumps: mean is undefined");
                           return p.p_up > 0.5 ? num::kInf : -num::kInf;
                       }
                       return (2.0 * p.p_up - 1.0) * m;
                   },
                   [=](const NormalJumps& n) {
                       return normal_mean_between(n.mean, n.sd, lo, hi) +
                              normal_mean_between(n.mean, n.sd, -hi, -lo);
                   }},
        law_);
}

double JumpDistribution::partial_second_moment(double x) const {
    return std::visit(overloaded{
                          [x](const Atoms& a) {
                              double s = 0.0;
                              for (std::size_t i = 0; i < a.values.size(); ++i)
                                  if (std::abs(a.values[i]) < x) s += a.probs[i] * a.values[i] * a.values[i];
                              return s;
                          },
                          [x](const DoubleExponential& d) {
                              auto side = [x](double r) { return 2.0 / (r * r) * boost::math::gamma_p(3.0, r * x); };
                              return d.p_up * side(d.rate_up) + (1.0 - d.p_up) * side(d.rate_down);
                          },
                          [x](const Pareto& p) {
                              if (x <= p.scale) return 0.0;
                              const double a = p.shape, s = p.scale;
                              if (a == 2.0) return a * s * s * std::log(x / s);
                              return a * std::pow(s, a) * (std::pow(x, 2.0 - a) - std::pow(s, 2.0 - a)) / (2.0 - a);
                          },
                          [x](const NormalJumps& n) { return normal_second_between(n.mean, n.sd, -x, x); }},
                      law_);
}

double JumpDistribution::large_abs_moment(double p) const {
    return std::visit(overloaded{
                          [p](const Atoms& a) {
                              double s = 0.0;
                              for (std::size_t i = 0; i < a.values.size(); ++i)
                                  if (std::abs(a.values[i]) > 1.0) s += a.probs[i] * std::pow(std::abs(a.values[i]), p);
                              return s;
                          },
                          [p](const DoubleExponential& d) {
                              auto side = [p](double r) { return std::pow(r, -p) * boost::math::tgamma(p + 1.0, r); };
                              return d.p_up * side(d.rate_up) + (1.0 - d.p_up) * side(d.rate_down);
                          },
                          [p](const Pareto& q) {
                              if (p >= q.shape) return num::kInf;
                              const double lo = std::max(1.0, q.scale);
                              return q.shape * std::pow(q.scale, q.shape) * std::pow(lo, p - q.shape) / (q.shape - p);
                          },
                          [p](const NormalJumps& n) {
                              auto f = [&](double y) {
                                  return std::pow(y, p) * (norm_pdf((y - n.mean) / n.sd) + norm_pdf((-y - n.mean) / n.sd)) / n.sd;
                              };
                              return num::to_inf(f, 1.0).value;
                          }},
                      law_);
}

double JumpDistribution::moment_index() const {
    if (const auto* p = std::get_if<Pareto>(&law_)) return p->shape;
    return num::kInf;
}

std::complex<double> JumpDistribution::mgf(std::complex<double> theta) const {
    return std::visit(
        overloaded{[theta](const Atoms& a) {
                       std::complex<double> s = 0.0;
                       for (std::size_t i = 0; i < a.values.size(); ++i) s += a.probs[i] * std::exp(theta * a.values[i]);
                       return s;
                   },
                   [theta](const DoubleExponential& d) {
                       return d.p_up * d.rate_up / (d.rate_up - theta) +
                              (1.0 - d.p_up) * d.rate_down / (d.rate_down + theta);
                   },
                   [theta](const Pareto& p) -> std::complex<double> {
                       if (theta.real() != 0.0) {
                           if (p.p_up < 1.0 || theta.real() > 0.0)
                               throw DomainError("pareto jumps: transform needs imaginary theta");
                           // Laplace transform of a positive Pareto jump.
                           auto f = [&](double t, bool im) {
                               const std::complex<double> v =
                                   std::exp(theta * (p.scale * t)) * (p.shape * std::pow(t, -p.shape - 1.0));
                               return im ? v.imag() : v.real();
                           };
                           return {num::to_inf([&](double t) { return f(t, false); }, 1.0).value,
                                   num::to_inf([&](double t) { return f(t, true); }, 1.0).value};
                       }
                       const double w = theta.imag() * p.scale;
                       const std::complex<double> up = pareto_fourier(p.shape, w);
                       return p.p_up * up + (1.0 - p.p_up) * std::conj(up);
                   },
                   [theta](const NormalJumps& n) { return std::exp(n.mean * theta + 0.5 * n.sd * n.sd * theta * theta); }},
        law_);
}

bool JumpDistribution::has_positive() const { return prob_above(0.0) > 0.0; }
bool JumpDistribution::has_negative() const { return prob_below(0.0) > 0.0; }

double JumpDistribution::sample(CounterRng& rng) const {
    return std::visit(overloaded{
                          [&rng](const Atoms& a) {
                              double u = rng.uniform();
                              for (std::size_t i = 0; i + 1 < a.values.size(); ++i) {
                                  if (u < a.probs[i]) return a.values[i];
                                  u -= a.probs[i];
                              }
                              return a.values.back();
                          },
                          [&rng](const DoubleExponential& d) {
                              const bool up = rng.uniform() < d.p_up;
                              const double e = rng.exponential();
                              return up ? e / d.rate_up : -e / d.rate_down;
                          },
                          [&rng](const Pareto& p) {
                              const bool up = rng.uniform() < p.p_up;
                              const double y = p.scale * std::pow(rng.uniform(), -1.0 / p.shape);
                              return up ? y : -y;
                          },
                          [&rng](const NormalJumps& n) { return n.mean + n.sd * rng.normal(); }},
                      law_);
}

JumpDistribution JumpDistribution::negated() const {
    return std::visit(overloaded{[](Atoms a) {
                                     for (double& v : a.values) v = -v;
                                     return JumpDistribution(a);
                                 },
                                 [](const DoubleExponential& d) {
                                     return JumpDistribution(DoubleExponential{1.0 - d.p_up, d.rate_down, d.rate_up});
                                 },
                                 [](Pareto p) {
                                     p.p_up = 1.0 - p.p_up;
                                     return JumpDistribution(p);
                                 },
                                 [](NormalJumps n) {
                                     n.mean = -n.mean;
                                     return JumpDistribution(n);
                                 }},
                      law_);
}

}  // namespace levysup
