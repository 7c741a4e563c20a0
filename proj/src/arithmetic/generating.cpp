#include <cmath>
#include <numbers>
#include <string>

#include "linnik/arithmetic.hpp"
#include "linnik/error.hpp"
#include "linnik/summation.hpp"

namespace linnik::arith {

namespace {

// sum_{m > c} m x^m with x = e^{-a}
double s_tilde_tail(double a, std::size_t c) {
    const double x = std::exp(-a);
    const double cc = static_cast<double>(c);
    const double one_minus = -std::expm1(-a);
    return std::exp(-(cc + 1.0) * a) * ((cc + 1.0) - cc * x) / (one_minus * one_minus);
}

// sum_{m > M} e^{-m^2 a} <= e^{-(M+1)^2 a} / (1 - e^{-2 (M+1) a})
double omega2_tail(double a, std::size_t m) {
    const double mm = static_cast<double>(m) + 1.0;
    return std::exp(-mm * mm * a) / -std::expm1(-2.0 * mm * a);
}

template <class Bound>
std::size_t smallest_cutoff(Bound&& bound, std::size_t lo, double tol) {
    std::size_t hi = std::max<std::size_t>(lo, 1);
    while (bound(hi) > tol) {
        if (hi > kMaxSieveLimit) throw TruncationError("cutoff search exceeded table capacity");
        lo = hi;
        hi = hi + hi / 4 + 1;
    }
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (bound(mid) <= tol) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return hi;
}

void require_tol(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw PreconditionError("tolerance must be positive");
}

}  // namespace

void validate(const ComplexPoint& z) {
    if (!std::isfinite(z.a) || !std::isfinite(z.y)) throw DomainError("z must be finite");
    if (!(z.a > 0.0)) throw DomainError("Re z must be > 0 (got " + std::to_string(z.a) + ")");
}

std::size_t s_tilde_cutoff(double a, double tol) {
    validate(ComplexPoint{a, 0.0});
    require_tol(tol);
    return smallest_cutoff([a](std::size_t c) { return s_tilde_tail(a, c); }, 1, tol);
}

std::size_t omega2_cutoff(double a, double tol) {
    validate(ComplexPoint{a, 0.0});
    require_tol(tol);
    auto min_m = static_cast<std::size_t>(std::ceil(std::sqrt(40.0 / a)));
    while (static_cast<double>(min_m) * static_cast<double>(min_m) * a < 40.0) ++min_m;
    return smallest_cutoff([a](std::size_t m) { return omega2_tail(a, m); }, min_m, tol);
}

SeriesValue s_tilde(const LambdaTable& lambda, ComplexPoint z, std::size_t cutoff) {
    validate(z);
    if (cutoff > lambda.limit()) {
        throw PreconditionError("s_tilde: cutoff " + std::to_string(cutoff) +
                                " exceeds Lambda table limit " + std::to_string(lambda.limit()));
    }
    CompensatedComplexSum s;
    for (std::size_t m = 1; m <= cutoff; ++m) {
        const double lam = lambda[m];
        if (lam == 0.0) continue;
        const double md = static_cast<double>(m);
        s += lam * std::exp(-md * z.a) * unit_phase(md, z.y);
    }
    return {s.value(), s_tilde_tail(z.a, cutoff), cutoff};
}

SeriesValue omega2(ComplexPoint z, std::size_t cutoff) {
    validate(z);
    const double mc = static_cast<double>(cutoff);
    if (mc * mc * z.a < 40.0) {
        throw TruncationError("omega2: cutoff^2 * a = " + std::to_string(mc * mc * z.a) +
                              " < 40");
    }
    // Smallest terms first.
    CompensatedComplexSum s;
    for (std::size_t m = cutoff; m >= 1; --m) {
        const double sq = static_cast<double>(m) * static_cast<double>(m);
        s += std::exp(-sq * z.a) * unit_phase(sq, z.y);
    }
    return {s.value(), omega2_tail(z.a, cutoff), cutoff};
}

SeriesValue theta3(ComplexPoint z, std::size_t cutoff) {
    SeriesValue w = omega2(z, cutoff);
    return {1.0 + 2.0 * w.value, 2.0 * w.tail_bound, cutoff};
}

SeriesValue omega2_auto(ComplexPoint z, double tol) {
    validate(z);
    return omega2(z, omega2_cutoff(z.a, tol));
}

SeriesValue theta3_auto(ComplexPoint z, double tol) {
    validate(z);
    return theta3(z, omega2_cutoff(z.a, tol / 2.0));
}

double omega2_real(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("omega2_real: x must be > 0");
    constexpr double pi = std::numbers::pi;
    if (x >= 1.0) return omega2_auto(ComplexPoint{x, 0.0}).value.real();
    const double dual = pi * pi / x;
    const double w_dual = omega2_auto(ComplexPoint{dual, 0.0}).value.real();
    // (sqrt(pi/x) (1 + 2 w_dual) - 1) / 2
    const double r = std::sqrt(pi / x);
    return 0.5 * (r - 1.0) + r * w_dual;
}

}  // namespace linnik::arith
