#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

#include "linnik/arithmetic.hpp"
#include "linnik/error.hpp"
#include "linnik/specfun.hpp"
#include "linnik/zeros.hpp"

namespace linnik::cli {

namespace {

using cplx = std::complex<double>;

Check run(const std::string& name, const std::function<std::string()>& body) {
    try {
        std::string failure = body();
        return {name, failure.empty(), failure.empty() ? "ok" : failure};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// theta3(z) = sqrt(pi / z) theta3(pi^2 / z)
std::string theta_modularity() {
    double worst = 0.0;
    for (cplx z : {cplx(0.7, 0.0), cplx(1.3, 0.4), cplx(2.0, -1.5), cplx(5.0, 3.0)}) {
        const cplx lhs = arith::theta3_auto({z.real(), z.imag()}).value;
        const cplx w = std::numbers::pi * std::numbers::pi / z;
        const cplx rhs = std::sqrt(std::numbers::pi / z) * arith::theta3_auto({w.real(), w.imag()}).value;
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return worst <= 1e-12 ? "" : "relative residual " + fmt(worst);
}

std::string laplace_identity() {
    double worst = 0.0;
    for (cplx s : {cplx(1.5, 0.0), cplx(2.5, 3.0), cplx(0.75, -2.0)}) {
        for (double n : {2.0, 10.0}) {
            const cplx got = specfun::laplace_line_integral(s, n, 1.0).value;
            const cplx want = std::exp((s - 1.0) * std::log(n) - specfun::log_gamma(s));
            worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
    }
    return worst <= 1e-8 ? "" : "relative error " + fmt(worst);
}

// J_{nu-1} + J_{nu+1} = (2 nu / u) J_nu
std::string bessel_recurrence() {
    double worst = 0.0;
    for (cplx nu : {cplx(2.0, 0.0), cplx(3.5, 14.1347), cplx(4.5, 30.0)}) {
        for (double u : {0.5, 10.0, 100.0, 628.3}) {
            const cplx a = specfun::bessel_j(nu - 1.0, u), b = specfun::bessel_j(nu, u),
                       c = specfun::bessel_j(nu + 1.0, u);
            const double scale = std::abs(a) + std::abs(c) + std::abs(2.0 * nu / u * b);
            worst = std::max(worst, std::abs(a + c - 2.0 * nu / u * b) / scale);
        }
    }
    return worst <= 1e-9 ? "" : "recurrence residual " + fmt(worst);
}

std::string rq_oracle() {
    constexpr std::size_t n = 200;
    const auto lambda = arith::sieve_von_mangoldt(n);
    const auto rq = arith::compute_rq(lambda, n);
    std::vector<double> oracle(n + 1, 0.0);
    for (std::size_t a = 2; a <= n; ++a) {
        for (std::size_t b = 1; a + b * b <= n; ++b) {
            for (std::size_t c = 1; a + b * b + c * c <= n; ++c) oracle[a + b * b + c * c] += lambda[a];
        }
    }
    for (std::size_t m = 1; m <= n; ++m) {
        if (std::fabs(rq[m] - oracle[m]) > 1e-12 * std::max(1.0, oracle[m])) {
            return "r_Q(" + std::to_string(m) + ") mismatch";
        }
    }
    return "";
}

std::string bundled_zeros() {
    const auto zs = zeros::resolve_zeros("bundled");
    zeros::validate(zs);
    return zs.count() == 100 ? "" : "expected 100 zeros, found " + std::to_string(zs.count());
}

}  // namespace

std::vector<Check> run_selftest() {
    return {
        run("theta_modularity", theta_modularity),
        run("laplace_identity", laplace_identity),
        run("bessel_recurrence", bessel_recurrence),
        run("rq_oracle", rq_oracle),
        run("bundled_zeros", bundled_zeros),
    };
}

}  // namespace linnik::cli
