// Truncation bounds for the Bessel sums.
//
// |J_nu(u)| is majorized by
//   B(nu, u) = 2 sqrt(2/pi) cosh(pi Im nu / 2) (u^2 + |nu|^2)^{-1/4} min(1, (e u / 2|nu|)^{Re nu}),
// which follows the sqrt(2 / pi u) decay for u >> |nu| and the leading power
// (u/2)^nu / Gamma(nu + 1) below the transition. The tests check B against
// the evaluator over the order range used here.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/formula.hpp"

namespace linnik::formula {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Below this l the plane sums are enumerated; beyond, each point is charged
// to its unit cell, which lies outside the disc of radius |l| - sqrt 2.
constexpr std::uint64_t kPlaneExplicit = 64;

double log_cosh(double t) {
    t = std::fabs(t);
    return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

// Smallest m >= 1 with m^2 >= x.
std::uint64_t first_index(double x) {
    if (x <= 1.0) return 1;
    auto m = static_cast<std::uint64_t>(std::sqrt(x));
    while (static_cast<double>(m) * static_cast<double>(m) < x) ++m;
    while (m > 1 && static_cast<double>(m - 1) * static_cast<double>(m - 1) >= x) --m;
    return m;
}

// Number of points with l < x.
double count_below(Geometry g, double x) {
    if (g == Geometry::line) return x <= 1.0 ? 0.0 : static_cast<double>(first_index(x) - 1);
    if (x <= static_cast<double>(kPlaneExplicit)) {
        double c = 0.0;
        for (std::uint64_t a = 1; a * a < kPlaneExplicit; ++a) {
            for (std::uint64_t b = 1; a * a + b * b < kPlaneExplicit; ++b) {
                if (static_cast<double>(a * a + b * b) < x) c += 1.0;
            }
        }
        return c;
    }
    return 0.25 * kPi * x;
}

}  // namespace

PointSet plane_points(std::size_t radius) {
    std::map<std::uint64_t, std::uint32_t> counts;
    const std::uint64_t r2 = static_cast<std::uint64_t>(radius) * radius;
    for (std::uint64_t a = 1; a * a < r2; ++a) {
        for (std::uint64_t b = 1; a * a + b * b <= r2; ++b) ++counts[a * a + b * b];
    }
    PointSet ps;
    ps.geometry = Geometry::plane;
    ps.points.assign(counts.begin(), counts.end());
    return ps;
}

PointSet line_points(std::size_t count) {
    PointSet ps;
    ps.geometry = Geometry::line;
    ps.points.reserve(count);
    for (std::uint64_t m = 1; m <= count; ++m) ps.points.emplace_back(m * m, 1u);
    return ps;
}

double log_bessel_envelope(cplx nu, double u) {
    const double a = nu.real();
    const double mod = std::abs(nu);
    double out = std::log(2.0 * std::sqrt(2.0 / kPi)) + log_cosh(0.5 * kPi * nu.imag()) -
                 0.25 * std::log(u * u + mod * mod);
    if (a > 0.0 && mod > 0.0) {
        if (u == 0.0) return -kInf;
        out += a * std::min(0.0, std::log(std::numbers::e * u / (2.0 * mod)));
    }
    return out;
}

double power_tail(Geometry g, double x, double p) {
    if (g == Geometry::line) {
        if (!(2.0 * p > 1.0)) return kInf;
        const double m0 = static_cast<double>(first_index(x));
        return std::pow(m0, -2.0 * p) + std::pow(m0, 1.0 - 2.0 * p) / (2.0 * p - 1.0);
    }
    if (!(p > 1.0)) return kInf;
    double explicit_part = 0.0;
    double from = std::max(x, static_cast<double>(kPlaneExplicit));
    if (x < static_cast<double>(kPlaneExplicit)) {
        for (std::uint64_t a = 1; a * a < kPlaneExplicit; ++a) {
            for (std::uint64_t b = 1; a * a + b * b < kPlaneExplicit; ++b) {
                const auto l = static_cast<double>(a * a + b * b);
                if (l >= x) explicit_part += std::pow(l, -p);
            }
        }
    }
    const double r0 = std::sqrt(from) - std::numbers::sqrt2;
    return explicit_part + 0.5 * kPi * std::pow(r0, 2.0 - 2.0 * p) / (2.0 * p - 2.0);
}

double log_bessel_tail(Geometry g, cplx nu, double n, double x) {
    const double a = nu.real();
    const double mod = std::abs(nu);
    if (!(a > 0.0)) throw DomainError("bessel_tail: Re nu must be > 0");
    const double s = std::sqrt(n);
    const double l_star = std::pow(mod / (std::numbers::e * kPi * s), 2);
    const double l_two = std::pow(mod / (2.0 * kPi * s), 2);
    const double log_head = std::log(2.0 * std::sqrt(2.0 / kPi)) + log_cosh(0.5 * kPi * nu.imag());

    // below l*: (e u / 2|nu|)^{Re nu} l^{-Re nu / 2} is constant in l
    double below = 0.0;
    if (x < l_star) {
        // count_below is exact for the line and for small l in the plane
        const bool exact = g == Geometry::line || x <= static_cast<double>(kPlaneExplicit);
        const double skipped = exact ? count_below(g, x) : 0.0;
        below = (count_below(g, l_star) - skipped) * std::pow(mod, -0.5) *
                std::pow(std::numbers::e * kPi * s / mod, a);
    }
    // l* <= l < l2: (u^2 + |nu|^2)^{-1/4} <= |nu|^{-1/2}
    double middle = 0.0;
    const double x1 = std::max(x, l_star);
    if (x1 < l_two) middle = std::pow(mod, -0.5) * power_tail(g, x1, 0.5 * a);
    // l >= l2: (u^2 + |nu|^2)^{-1/4} <= (2 pi sqrt(l N))^{-1/2}
    const double far = std::pow(2.0 * kPi * s, -0.5) * power_tail(g, std::max(x, l_two), 0.5 * a + 0.25);
    return log_head + std::log(below + middle + far);
}

double bessel_tail(Geometry g, cplx nu, double n, double x) {
    return std::exp(log_bessel_tail(g, nu, n, x));
}

}  // namespace linnik::formula
