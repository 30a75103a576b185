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
#include "levysup/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "levysup/error.hpp"
#include "numerics.hpp"

namespace levysup {

namespace {

constexpr int kBorweinTerms = 40;

struct BorweinWeights {
    // e[k] = d_n - d_k, suffix sums so the weights near k = n keep full relative precision.
    std::array<double, kBorweinTerms> e{};
    double dn = 0.0;

    BorweinWeights() {
        const int n = kBorweinTerms;
        std::array<double, kBorweinTerms + 1> t{};
        t[0] = 1.0;
        for (int i = 0; i < n; ++i) {
            t[i + 1] = t[i] * 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
        }
        double acc = 0.0;
        for (int k = n - 1; k >= 0; --k) {
            acc += t[k + 1];
            e[k] = acc;
        }
        for (int i = 0; i <= n; ++i) dn += t[i];
    }
};

const BorweinWeights& weights() {
    static const BorweinWeights w;
    return w;
}

}  // namespace

double dirichlet_eta(double s) {
    if (!std::isfinite(s)) throw DomainError("dirichlet_eta: s must be finite");
    const BorweinWeights& w = weights();
    double sum = 0.0;
    for (int k = kBorweinTerms - 1; k >= 0; --k) {
        const double term = w.e[k] * std::exp(-s * std::log(k + 1.0));
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum / w.dn;
}

double zeta(double s) {
    if (s == 1.0) throw PoleError("zeta: pole at s = 1");
    if (!std::isfinite(s)) throw DomainError("zeta: s must be finite");
    if (s > 40) return 1.0 + std::exp2(-s) + std::pow(3.0, -s);
    return dirichlet_eta(s) / -std::expm1((1.0 - s) * std::log(2.0));
}

double expected_abs(double alpha, double rho, double scale) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        throw UnsupportedError("expected_abs: alpha must lie in (1, 2]");
    }
    if (!(scale > 0)) throw DomainError("expected_abs: scale must be positive");
    if (alpha == 2.0) return scale * std::sqrt(2.0 / num::kPi);
    const double beta = skew_from_rho(alpha, rho);
    const double h = 0.5 * std::pow(scale, alpha);
    const double bt = beta * std::tan(num::kPi * alpha / 2.0);
    // (1 - Re E e^{iuX}) / u^2, with 1 - e^{-a} cos b = -expm1(-a) cos b + 2 sin^2(b/2).
    auto f = [&](double u) {
        if (u <= 0) return 0.0;
        const double ua = std::pow(u, alpha);
        const double a = h * ua, b = h * bt * ua;
        const double sb = std::sin(0.5 * b);
        return (-std::expm1(-a) * std::cos(b) + 2.0 * sb * sb) / (u * u);
    };
    // On (0, u0] integrate the series 1 - e^{-z} = sum_k (-1)^{k+1} z^k / k!, z = h u^alpha (1 - i bt),
    // term by term; |z(u0)| = 1/4 keeps it short.
    const std::complex<double> z1(h, -h * bt);
    const double u0 = std::pow(0.25 / std::abs(z1), 1.0 / alpha);
    double total = 0.0;
    std::complex<double> zk = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= 40; ++k) {
        zk *= z1 * std::pow(u0, alpha);
        fact *= k;
        const double sign = k % 2 == 1 ? 1.0 : -1.0;
        const double term = sign * zk.real() / fact / (k * alpha - 1.0) / u0;
        total += term;
        if (std::abs(zk) / fact / u0 < 1e-17 * std::abs(total)) break;
    }
    // Beyond u_max the characteristic function is below 1e-16 and the integrand is 1/u^2.
    const double u_max = std::max(2.0 * u0, std::pow(37.0 / h, 1.0 / alpha));
    double lo = u0;
    while (lo < u_max) {
        const double hi = std::min(u_max, 2.0 * lo);
        total += num::gk(f, lo, hi, 1e-13).value;
        lo = hi;
    }
    total += 1.0 / lo;
    return 2.0 / num::kPi * total;
}

double expected_positive_part(double alpha, double rho, double scale) {
    if (!(alpha > 1.0)) throw UnsupportedError("expected_positive_part: alpha must exceed 1");
    return 0.5 * expected_abs(alpha, rho, scale);
}

Correction expected_vhat(const ZoomClass& zc) {
    if (zc.kind != LimitKind::Brownian && zc.kind != LimitKind::Stable) {
        throw UnsupportedError("expected_vhat: needs a Brownian or stable attractor, got " +
                               to_string(zc.kind));
    }
    if (!(zc.alpha > 1.0)) throw UnsupportedError("expected_vhat: alpha must exceed 1");
    Correction c;
    c.alpha = zc.alpha;
    c.rho = zc.kind == LimitKind::Brownian ? 0.5 : zc.rho;
    c.scale = zc.scale;
    c.zeta_value = zeta((c.alpha - 1.0) / c.alpha);
    c.e_pos_unit = expected_positive_part(c.alpha, c.rho, 1.0);
    c.e_vhat_unit = -c.zeta_value * c.e_pos_unit;
    c.e_pos = c.scale * c.e_pos_unit;
    c.e_vhat = c.scale * c.e_vhat_unit;
    c.convention = zc.kind == LimitKind::Brownian ? "brownian sigma=scale; unit sigma=1"
                                                  : "stable half-scale S1; unit scale=1";
    return c;
}

double brownian_sup_density(double x, double mu, double sigma) {
    if (!(x > 0)) throw DomainError("brownian_sup_density: x must be positive");
    if (!(sigma > 0)) throw DomainError("brownian_sup_density: sigma must be positive");
    const double z = x / sigma, m = mu / sigma;
    const double tail = m == 0.0 ? 0.0 : 2.0 * m * std::exp(2.0 * m * z) * num::norm_cdf(-z - m);
    return (2.0 * num::norm_pdf(z - m) - tail) / sigma;
}

double brownian_sup_cdf(double x, double mu, double sigma) {
    if (!(x >= 0)) throw DomainError("brownian_sup_cdf: x must be non-negative");
    if (!(sigma > 0)) throw DomainError("brownian_sup_cdf: sigma must be positive");
    const double z = x / sigma, m = mu / sigma;
    return num::norm_cdf(z - m) - std::exp(2.0 * m * z) * num::norm_cdf(-z - m);
}

}  // namespace levysup
