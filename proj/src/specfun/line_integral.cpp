// Vertical-line integrals over Re z = a.
//
// The segment |Im z| <= Y is integrated with composite Gauss-Legendre panels
// (a 30-point rule checked against a 20-point rule on every panel). The two
// tails are not integrated numerically: repeated integration by parts gives
//   int_{a+iY}^{a+i inf} e^{Nz} z^{-s} dz = -e^{N z0} sum_{j<J} (s)_j z0^{-s-j} / N^{j+1} + R_J
// with |R_J| <= |(s)_J| N^{-J} e^{Na} e^{pi |Im s| / 2} Y^{1 - Re s - J} / (Re s + J - 1),
// which handles conditionally convergent tails (0 < Re s <= 1) as well.

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/specfun.hpp"
#include "linnik/summation.hpp"

namespace linnik::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 2'000'000;

struct QuadOut {
    cplx value;
    double abs_err = 0.0;
    double l1 = 0.0;
};

template <class F>
QuadOut integrate_panels(F&& f, double y0, double y1, double h) {
    using boost::math::quadrature::gauss;
    const auto& x30 = gauss<double, 30>::abscissa();
    const auto& w30 = gauss<double, 30>::weights();
    const auto& x20 = gauss<double, 20>::abscissa();
    const auto& w20 = gauss<double, 20>::weights();

    const auto panels = static_cast<std::size_t>(std::ceil((y1 - y0) / h));
    if (panels > kMaxPanels) throw QuadratureError("line integral: panel budget exceeded");
    const double width = (y1 - y0) / static_cast<double>(panels);
    const double half = 0.5 * width;

    // Symmetric rules: boost stores the non-negative half of the nodes.
    auto rule = [&](const auto& xs, const auto& ws, double mid, double& l1) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == 0.0) {
                const cplx v = f(mid);
                acc += ws[i] * v;
                l1 += ws[i] * std::abs(v);
                continue;
            }
            const cplx vp = f(mid + half * xs[i]);
            const cplx vm = f(mid - half * xs[i]);
            acc += ws[i] * (vp + vm);
            l1 += ws[i] * (std::abs(vp) + std::abs(vm));
        }
        return acc * half;
    };

    CompensatedComplexSum total;
    double err = 0.0, l1 = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = y0 + (static_cast<double>(p) + 0.5) * width;
        double l1_30 = 0.0, l1_20 = 0.0;
        const cplx v30 = rule(x30, w30, mid, l1_30);
        const cplx v20 = rule(x20, w20, mid, l1_20);
        total += v30;
        err += std::abs(v30 - v20);
        l1 += l1_30 * half;
    }
    return {total.value(), err + 8.0 * kEps * l1, l1};
}

// Tails are pushed below the requested relative tolerance of the segment
// value, but never below the rounding floor of the segment itself.
double tail_tolerance(const QuadOut& q, double tol) {
    return std::max({0.25 * tol * std::abs(q.value), 4.0 * kEps * q.l1, 1e-300});
}

struct TailOut {
    cplx value;      // (1/2 pi i) times both tail integrals
    double bound = 0.0;
    bool ok = false;
};

// Tails of (1/2 pi i) int_{(a)} e^{Nz} z^{-s} dz beyond |Im z| = Y.
TailOut laplace_tails(cplx s, double n, double a, double y, double abs_tol) {
    const cplx z0(a, y), z1(a, -y);
    const cplx inv0 = 1.0 / z0, inv1 = 1.0 / z1;
    cplx pw0 = std::exp(-s * std::log(z0));
    cplx pw1 = std::exp(-s * std::log(z1));
    const cplx e0 = std::exp(n * z0), e1 = std::exp(n * z1);
    const double env = std::exp(n * a + std::numbers::pi * std::fabs(s.imag()) / 2.0);

    CompensatedComplexSum up, lo;
    cplx coef = 1.0 / n;  // (s)_j / N^{j+1}
    double prev_bound = std::numeric_limits<double>::infinity();
    TailOut out;
    for (int j = 0; j < 400; ++j) {
        up += coef * pw0;
        lo += coef * pw1;
        coef *= (s + static_cast<double>(j)) / n;
        pw0 *= inv0;
        pw1 *= inv1;
        const double jj = static_cast<double>(j + 1);
        const double p = s.real() + jj - 1.0;
        if (p <= 0.0) continue;
        // |(s)_J| / N^J = |coef| * N
        const double r = 2.0 * std::abs(coef) * n * env * std::pow(y, -p) / p /
                         (2.0 * std::numbers::pi);
        if (r <= abs_tol) {
            out.ok = true;
            out.bound = r;
            break;
        }
        if (r > prev_bound) break;
        prev_bound = r;
        out.bound = r;
    }
    // int_{z0}^{inf} = -e^{N z0} (...), int_{-inf}^{z1} = +e^{N z1} (...)
    const cplx sum = -e0 * up.value() + e1 * lo.value();
    out.value = sum / cplx(0.0, 2.0 * std::numbers::pi);
    return out;
}

}  // namespace

LineIntegral laplace_line_integral(cplx s, double n, double a, const PrecisionConfig& cfg) {
    validate(cfg);
    if (!(s.real() > 0.0)) throw DomainError("laplace_line_integral: Re s must be > 0");
    if (!(n > 0.0) || !(a > 0.0)) throw DomainError("laplace_line_integral: N and a must be > 0");

    const double h = std::min({a / 2.0, 4.0 / n, 1.0});
    double y = std::max({8.0, 4.0 * (std::abs(s) + 8.0) / n, 4.0 * a});
    for (int attempt = 0; attempt < 6; ++attempt, y *= 2.0) {
        auto f = [&](double t) {
            const cplx z(a, t);
            return std::exp(n * z - s * std::log(z)) / (2.0 * std::numbers::pi);
        };
        const QuadOut q = integrate_panels(f, -y, y, h);
        const double abs_tol = tail_tolerance(q, cfg.target_rel_tol);
        const TailOut t = laplace_tails(s, n, a, y, abs_tol);
        if (!t.ok) continue;
        return {q.value + t.value, q.abs_err + t.bound, y};
    }
    throw TruncationError("laplace_line_integral: tail expansion did not reach tolerance");
}

LineIntegral sonine_bessel(cplx nu, double u, double a, const PrecisionConfig& cfg) {
    validate(cfg);
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("sonine_bessel: u must be > 0");
    if (!(nu.real() > -1.0)) throw DomainError("sonine_bessel: Re nu must be > -1");
    if (!(a > 0.0)) throw DomainError("sonine_bessel: abscissa must be > 0");

    const double c = 0.25 * u * u;
    const cplx s0 = nu + 1.0;
    const double h = std::min(a / 2.0, 0.5);
    double y = std::max({20.0, 4.0 * c, 4.0 * std::abs(nu) + 20.0, 4.0 * a});

    const cplx pre = std::exp(nu * std::log(0.5 * u));
    for (int attempt = 0; attempt < 4; ++attempt, y *= 2.0) {
        auto f = [&](double t) {
            const cplx z(a, t);
            return std::exp(z - c / z - s0 * std::log(z)) / (2.0 * std::numbers::pi);
        };
        const QuadOut q = integrate_panels(f, -y, y, h);
        const double abs_tol = tail_tolerance(q, cfg.target_rel_tol);

        // e^{-c/t} = sum_k (-c)^k / k! t^{-k}: one Laplace tail per k.
        CompensatedComplexSum tails;
        double bound = 0.0;
        double weight = 1.0;  // c^k / k!
        bool ok = true;
        for (int k = 0; k < 200; ++k) {
            const TailOut t = laplace_tails(s0 + static_cast<double>(k), 1.0, a, y, abs_tol);
            if (!t.ok) {
                ok = false;
                break;
            }
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            tails += sign * weight * t.value;
            bound += weight * t.bound;
            // the k-th tail is at most e^{a} Y^{-Re s_k} / (Re s_k) up to constants
            const double next_w = weight * c / static_cast<double>(k + 1);
            const double sk = s0.real() + k + 1.0;
            const double env = std::exp(a + std::numbers::pi * std::fabs(nu.imag()) / 2.0) *
                               std::pow(y, 1.0 - sk) / std::max(sk - 1.0, 1e-3);
            weight = next_w;
            if (weight * env < abs_tol) {
                bound += weight * env;
                break;
            }
        }
        if (!ok) continue;
        const cplx total = q.value + tails.value();
        const double pre_abs = std::abs(pre);
        return {pre * total, pre_abs * (q.abs_err + bound), y};
    }
    throw QuadratureError("sonine_bessel: tail expansion did not reach tolerance");
}

}  // namespace linnik::specfun
