#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/parallel.hpp"
#include "linnik/specfun.hpp"
#include "linnik/summation.hpp"
#include "linnik/zeros.hpp"

namespace linnik::zeros {

namespace {

void require_count(const ZeroSet& zs, std::size_t z) {
    if (z > zs.count()) {
        throw RangeError("zero sum: Z = " + std::to_string(z) + " exceeds the " +
                         std::to_string(zs.count()) + " loaded zeros");
    }
}

}  // namespace

double paired_zero_sum(const ZeroFunction& f, const ZeroSet& zs, std::size_t z) {
    require_count(zs, z);
    const auto total = parallel::chunked_sum<CompensatedSum>(
        z, [&](std::size_t i) { return 2.0 * f(zs.zeros[i].rho()).real(); });
    return total.value();
}

cplx conjugate_pair_sum(const ZeroFunction& f, const ZeroSet& zs, std::size_t z) {
    require_count(zs, z);
    const auto total = parallel::chunked_sum<CompensatedComplexSum>(z, [&](std::size_t i) {
        const cplx rho = zs.zeros[i].rho();
        return f(rho) + f(std::conj(rho));
    });
    return total.value();
}

double zero_count_model(double t) {
    if (t <= 0.0) return 0.0;
    const double x = t / (2.0 * std::numbers::pi);
    return x * std::log(x / std::numbers::e) + 0.875;
}

double ordinate_model(double index) {
    // Newton on N(T) = index; N'(T) = log(T / 2pi) / 2pi.
    double t = std::max(14.0, 2.0 * std::numbers::pi * index / std::max(1.0, std::log(index + 2.0)));
    for (int it = 0; it < 60; ++it) {
        const double d = std::log(t / (2.0 * std::numbers::pi)) / (2.0 * std::numbers::pi);
        const double step = (zero_count_model(t) - index) / std::max(d, 1e-3);
        t = std::max(14.0, t - step);
        if (std::fabs(step) < 1e-12 * t) break;
    }
    return t;
}

double zero_tail_bound(double k, double n, double power, std::size_t z, const ZeroSet& zs) {
    require_count(zs, z);
    const double s = k + power;
    if (!(s > 1.0)) return std::numeric_limits<double>::infinity();
    const double log_n = std::log(n);

    CompensatedSum acc;
    double beta_max = 0.5;
    for (const ZetaZero& zz : zs.zeros) beta_max = std::max(beta_max, zz.beta);
    for (std::size_t j = z; j < zs.count(); ++j) {
        const ZetaZero& zz = zs.zeros[j];
        const double lr = specfun::log_gamma_ratio(zz.rho(), s).real();
        acc += std::exp(lr + (s - 1.0 + zz.beta) * log_n);
    }

    double t0 = ordinate_model(static_cast<double>(std::max<std::size_t>(z, 1)));
    if (zs.count() > 0) {
        t0 = (z < zs.count()) ? zs.zeros.back().gamma : std::max(zs.zeros.back().gamma, t0);
    }
    const double l = std::log(t0 / (2.0 * std::numbers::pi));
    const double density = std::pow(t0, 1.0 - s) * ((s - 1.0) * l + 1.0) /
                           (2.0 * std::numbers::pi * (s - 1.0) * (s - 1.0));
    acc += std::exp(s * s / t0 + (s - 1.0 + beta_max) * log_n) * density;

    // both members of each pair, safety factor 2
    return 4.0 * acc.value();
}

}  // namespace linnik::zeros
