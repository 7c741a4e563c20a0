#include <cmath>
#include <complex>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/specfun.hpp"

namespace linnik::specfun {

namespace {

using lcplx = std::complex<long double>;

// B_{2j} / (2j (2j - 1))
constexpr long double kStirling[] = {
    1.0L / 12.0L,          -1.0L / 360.0L,       1.0L / 1260.0L,
    -1.0L / 1680.0L,       1.0L / 1188.0L,       -691.0L / 360360.0L,
    1.0L / 156.0L,         -3617.0L / 122400.0L, 43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
};

constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639861L;

// Stirling series; caller guarantees Re s >= 0.5 and |s| >= 12.
lcplx stirling(lcplx s) {
    const lcplx inv = 1.0L / s;
    const lcplx inv2 = inv * inv;
    lcplx corr = 0.0L;
    lcplx p = inv;
    for (long double c : kStirling) {
        corr += c * p;
        p *= inv2;
    }
    return (s - 0.5L) * std::log(s) - s + kHalfLog2Pi + corr;
}

// Im s >= 0 assumed.
lcplx log_gamma_upper(lcplx s) {
    lcplx shift = 0.0L;
    while (s.real() < 0.5L || std::abs(s) < 12.0L) {
        shift += std::log(s);
        s += 1.0L;
    }
    return stirling(s) - shift;
}

}  // namespace

cplx log_gamma(cplx s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw DomainError("log_gamma: non-finite argument");
    }
    if (s.imag() == 0.0 && s.real() <= 0.0 && std::nearbyint(s.real()) == s.real()) {
        throw PoleError("log_gamma: Gamma has a pole", static_cast<long>(s.real()));
    }
    const bool lower = s.imag() < 0.0;
    const lcplx z(s.real(), lower ? -s.imag() : s.imag());
    const lcplx r = log_gamma_upper(z);
    const cplx out(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    return lower ? std::conj(out) : out;
}

cplx gamma(cplx s) {
    if (s.imag() == 0.0) {
        // Real axis: keep the result exactly real.
        const cplx l = log_gamma(s);
        const double mag = std::exp(l.real());
        // imag part is -n pi for n negative shifts: the sign is (-1)^n.
        const double n = std::nearbyint(l.imag() / std::numbers::pi);
        return {std::fmod(std::fabs(n), 2.0) == 1.0 ? -mag : mag, 0.0};
    }
    return std::exp(log_gamma(s));
}

cplx log_gamma_ratio(cplx rho, double offset) {
    return log_gamma(rho) - log_gamma(rho + offset);
}

cplx gamma_ratio(cplx rho, double offset) {
    const cplx l = log_gamma_ratio(rho, offset);
    if (rho.imag() == 0.0) {
        const double mag = std::exp(l.real());
        const double n = std::nearbyint(l.imag() / std::numbers::pi);
        return {std::fmod(std::fabs(n), 2.0) == 1.0 ? -mag : mag, 0.0};
    }
    return std::exp(l);
}

}  // namespace linnik::specfun
