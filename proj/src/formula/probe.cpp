#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/formula.hpp"

namespace linnik::formula {

namespace {

// sum_{l >= 1} e^{-x l^2}: directly while at most `cap` terms are needed,
// otherwise through the theta transformation.
double omega_capped(double x, std::size_t cap) {
    const double c = static_cast<double>(cap);
    if (x >= 1.0 || x * c * c < 40.0) return arith::omega2_real(x);
    double s = 0.0;
    for (std::size_t l = static_cast<std::size_t>(std::ceil(std::sqrt(40.0 / x))); l >= 1; --l) {
        const double ld = static_cast<double>(l);
        s += std::exp(-x * ld * ld);
    }
    return s;
}

}  // namespace

ProbeSeries lattice_probe(int d, double k, double n, const ZeroSet& zs, double vmax,
                         std::size_t lattice_cap) {
    if (d < 1 || d > 3) throw PreconditionError("lattice_probe: d must be 1, 2 or 3");
    if (!(n > 0.0) || !std::isfinite(k) || !(vmax > 0.0) || lattice_cap == 0) {
        throw PreconditionError("lattice_probe: need N > 0, finite k, vmax > 0, lattice_cap >= 1");
    }
    ProbeSeries out;
    out.d = d;
    out.k = k;
    out.partial_sums.reserve(zs.count());

    boost::math::quadrature::tanh_sinh<double> quad;
    double running = 0.0;
    for (const auto& z : zs.zeros) {
        const double g = z.gamma;
        const double scale = n / (g * g);
        const double e = k + z.beta;
        auto f = [&](double v) {
            if (v <= 0.0) return 0.0;
            const double x = scale * v * v;
            // leading theta behaviour where x underflows
            const double w = x < 1e-200 ? 0.5 * std::sqrt(std::numbers::pi / scale) / v
                                        : omega_capped(x, lattice_cap);
            return std::exp(d * std::log(w) - v + e * std::log(v));
        };
        double err = 0.0, l1 = 0.0;
        const double upper = std::min(g, vmax);
        const double val = quad.integrate(f, 0.0, upper, 1e-10, &err, &l1);
        if (!std::isfinite(val) || err > 1e-10 * std::max(l1, 1e-300) * 10.0) {
            throw QuadratureError("lattice_probe: integral at gamma = " + std::to_string(g) +
                                  " did not converge (error estimate " + std::to_string(err) + ")");
        }
        running += std::exp(-(k + 1.5) * std::log(g)) * val;
        out.partial_sums.push_back(running);
    }
    return out;
}

}  // namespace linnik::formula
