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

#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "levysup/error.hpp"

namespace levysup::num {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

// E[J; a < J < b] and E[J^2; a < J < b] for J ~ N(m, s^2).
inline double normal_mean_between(double m, double s, double a, double b) {
    if (!(a < b)) return 0.0;
    const double za = (a - m) / s, zb = (b - m) / s;
    const double pa = std::isfinite(za) ? norm_pdf(za) : 0.0;
    const double pb = std::isfinite(zb) ? norm_pdf(zb) : 0.0;
    return m * (norm_cdf(zb) - norm_cdf(za)) + s * (pa - pb);
}

inline double normal_second_between(double m, double s, double a, double b) {
    if (!(a < b)) return 0.0;
    const double za = (a - m) / s, zb = (b - m) / s;
    const double ta = std::isfinite(za) ? (a + m) * norm_pdf(za) : 0.0;
    const double tb = std::isfinite(zb) ? (b + m) * norm_pdf(zb) : 0.0;
    return (m * m + s * s) * (norm_cdf(zb) - norm_cdf(za)) + s * (ta - tb);
}

// Upper incomplete gamma Gamma(a, z) for z > 0 and any real a.
inline double upper_gamma(double a, double z) {
    if (!(z > 0)) throw DomainError("upper_gamma: z must be positive");
    if (a > 0) return boost::math::tgamma(a, z);
    if (a == 0) return boost::math::expint(1, z);
    if (z >= 1.0) {
        // Lentz continued fraction, valid for every a once z >= 1.
        const double tiny = 1e-300;
        double b = z + 1.0 - a;
        double c = 1.0 / tiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i < 10000; ++i) {
            const double an = -i * (i - a);
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < tiny) d = tiny;
            c = b + an / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 1e-16) break;
        }
        return std::exp(-z + a * std::log(z)) * h;
    }
    // Downward recurrence Gamma(a, z) = (Gamma(a+1, z) - z^a e^{-z}) / a.
    return (upper_gamma(a + 1.0, z) - std::exp(a * std::log(z) - z)) / a;
}

inline double lower_gamma(double a, double z) {
    if (!(a > 0)) throw DomainError("lower_gamma: a must be positive");
    return boost::math::tgamma_lower(a, z);
}

using RealFn = std::function<double(double)>;

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

// Adaptive Gauss-Kronrod on a finite interval.
inline Integral gk(const RealFn& f, double a, double b, double rel_tol = 1e-12,
                   unsigned max_depth = 18) {
    if (a == b) return {};
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, max_depth, rel_tol, &err);
    if (!std::isfinite(v)) throw QuadratureError("quadrature produced a non-finite value", err);
    return {v, err};
}

// int_a^b f(y) dy for 0 < a < b through y = e^t.
inline Integral gk_log(const RealFn& f, double a, double b, double rel_tol = 1e-12) {
    if (a == b) return {};
    auto g = [&](double t) {
        const double y = std::exp(t);
        return f(y) * y;
    };
    return gk(g, std::log(a), std::log(b), rel_tol);
}

// int_a^b g(y) dy / y, for integrands already carrying the factor y.
inline Integral gk_dlog(const RealFn& g, double a, double b, double rel_tol = 1e-12) {
    if (a == b) return {};
    return gk([&](double t) { return g(std::exp(t)); }, std::log(a), std::log(b), rel_tol);
}

// int_0^b f(y) dy, summing geometric pieces [b e^{-2(j+1)}, b e^{-2j}] until they stop
// contributing. With per_log the integrand is y f(y) and the measure dy / y.
inline Integral to_zero(const RealFn& f, double b, double rel_tol = 1e-12, int max_pieces = 320,
                        bool per_log = false) {
    double total = 0.0, err = 0.0, prev = kInf;
    double hi = b;
    const double step = std::exp(-2.0);
    for (int j = 0; j < max_pieces; ++j) {
        const double lo = hi * step;
        if (lo < 1e-300) break;
        const Integral piece = per_log ? gk_dlog(f, lo, hi, rel_tol) : gk_log(f, lo, hi, rel_tol);
        total += piece.value;
        err += piece.error;
        const double mag = std::abs(piece.value);
        if (mag <= rel_tol * std::abs(total) && std::abs(prev) <= 10 * rel_tol * std::abs(total)) {
            const double r = std::isfinite(prev) && prev != 0.0 ? mag / std::abs(prev) : 0.0;
            if (r < 0.9 && piece.value * prev > 0) total += piece.value * r / (1.0 - r);
            return {total, err + mag};
        }
        if (total == 0.0 && mag == 0.0 && prev == 0.0) return {0.0, err};
        if (j > 20 && std::isfinite(prev) && prev != 0.0) {
            const double r = mag / std::abs(prev);
            if (r > 0.999 && j > 60) {
                throw QuadratureError("integral diverges at 0", mag / (1.0 - std::min(r, 0.999999)));
            }
        }
        prev = piece.value;
        hi = lo;
    }
    // Remainder from the ratio of the last pieces.
    return {total, err + std::abs(prev)};
}

// int_a^inf f(y) dy with geometric pieces [a e^{2j}, a e^{2(j+1)}].
inline Integral to_inf(const RealFn& f, double a, double rel_tol = 1e-12, int max_pieces = 320,
                        bool per_log = false) {
    double total = 0.0, err = 0.0, prev = kInf;
    double lo = a;
    const double step = std::exp(2.0);
    for (int j = 0; j < max_pieces; ++j) {
        const double hi = lo * step;
        if (hi > 1e300) break;
        const Integral piece = per_log ? gk_dlog(f, lo, hi, rel_tol) : gk_log(f, lo, hi, rel_tol);
        total += piece.value;
        err += piece.error;
        const double mag = std::abs(piece.value);
        if (mag <= rel_tol * std::abs(total) && std::abs(prev) <= 10 * rel_tol * std::abs(total)) {
            const double r = std::isfinite(prev) && prev != 0.0 ? mag / std::abs(prev) : 0.0;
            if (r < 0.9 && piece.value * prev > 0) total += piece.value * r / (1.0 - r);
            return {total, err + mag};
        }
        if (total == 0.0 && mag == 0.0 && prev == 0.0) return {0.0, err};
        if (j > 20 && std::isfinite(prev) && prev != 0.0) {
            const double r = mag / std::abs(prev);
            if (r > 0.999 && j > 60) {
                throw QuadratureError("integral diverges at infinity",
                                      mag / (1.0 - std::min(r, 0.999999)));
            }
        }
        prev = piece.value;
        lo = hi;
    }
    return {total, err + std::abs(prev)};
}

}  // namespace levysup::num
