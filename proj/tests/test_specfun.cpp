#include <doctest.h>

#include <cmath>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/specfun.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace linnik;
using namespace linnik::specfun;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("log_gamma against frozen high-precision values") {
    for (const auto& c : oracle::log_gamma) {
        CAPTURE(c.s);
        const cplx got = log_gamma(c.s);
        CHECK(std::abs(got - c.value) <= 1e-13 * std::max(1.0, std::abs(c.value)));
    }
}

TEST_CASE("log_gamma poles and real arguments") {
    CHECK_THROWS_AS(log_gamma(cplx(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(log_gamma(cplx(-3.0, 0.0)), PoleError);
    CHECK(gamma(cplx(5.0, 0.0)).real() == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(gamma(cplx(5.0, 0.0)).imag() == 0.0);
    CHECK(gamma(cplx(0.5, 0.0)).real() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
    // Gamma(-1/2) = -2 sqrt(pi), exactly real
    const cplx g = gamma(cplx(-0.5, 0.0));
    CHECK(g.imag() == 0.0);
    CHECK(g.real() == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("log_gamma recurrence and reflection of conjugates") {
    prop::for_all(300, 31, [](prop::Gen& g) {
        const cplx s(g.uniform(-8.0, 20.0), g.uniform(-300.0, 300.0));
        if (std::fabs(s.imag()) < 1e-3) return;
        // log Gamma(s + 1) = log Gamma(s) + Log s on the principal branch
        const cplx d = log_gamma(s + 1.0) - log_gamma(s) - std::log(s);
        CHECK(std::abs(d) <= 1e-12 * std::max(1.0, std::abs(log_gamma(s))));
        CHECK(log_gamma(std::conj(s)) == std::conj(log_gamma(s)));
    });
}

TEST_CASE("gamma_ratio is the quotient of the Gammas") {
    prop::for_all(200, 32, [](prop::Gen& g) {
        const cplx rho(0.5, g.uniform(10.0, 250.0));
        const double off = g.uniform(0.5, 5.0);
        const cplx want = std::exp(log_gamma(rho) - log_gamma(rho + off));
        CHECK(rel(gamma_ratio(rho, off), want) <= 1e-12);
        // |Gamma(rho) / Gamma(rho + c)| ~ gamma^{-c}
        const double mag = std::abs(gamma_ratio(rho, off)) * std::pow(rho.imag(), off);
        CHECK(mag == doctest::Approx(1.0).epsilon(0.2 * off * off / rho.imag() + 0.05));
    });
}

TEST_CASE("Bessel J against the 200-bit oracle") {
    for (const auto& c : oracle::bessel_grid) {
        CAPTURE(c.nu);
        CAPTURE(c.u);
        const BesselResult r = bessel_j_scaled(c.nu, c.u);
        const double err = std::exp(std::log(std::abs(r.value.value() - c.value)) - std::log(std::abs(c.value)));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("Bessel symmetries") {
    prop::for_all(200, 33, [](prop::Gen& g) {
        const cplx nu(g.uniform(-0.9, 6.0), g.uniform(-240.0, 240.0));
        const double u = g.log_uniform(0.05, 5000.0);
        CAPTURE(nu);
        CAPTURE(u);
        const auto a = bessel_j_scaled(nu, u), b = bessel_j_scaled(std::conj(nu), u);
        CHECK(a.value.exp2 == b.value.exp2);
        CHECK(a.value.mant == std::conj(b.value.mant));
    });
    prop::for_all(100, 34, [](prop::Gen& g) {
        const double nu = g.uniform(0.0, 8.0), u = g.log_uniform(0.05, 5000.0);
        CHECK(bessel_j(nu, u).imag() == 0.0);
    });
    for (int n = 1; n <= 5; ++n) {
        const cplx pos = bessel_j(static_cast<double>(n), 7.5), neg = bessel_j(static_cast<double>(-n), 7.5);
        CHECK(neg == (n % 2 ? -pos : pos));
    }
}

TEST_CASE("Bessel at u = 0 and invalid arguments") {
    CHECK(bessel_j(0.0, 0.0) == cplx(1.0, 0.0));
    CHECK(bessel_j(cplx(2.5, 14.0), 0.0) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(bessel_j(cplx(-0.5, 1.0), 0.0), DomainError);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), DomainError);
}

TEST_CASE("Bessel three-term recurrence J_{nu-1} + J_{nu+1} = (2 nu / u) J_nu") {
    prop::for_all(300, 35, [](prop::Gen& g) {
        const cplx nu(g.uniform(1.0, 6.0), g.uniform(0.0, 240.0));
        const double u = g.log_uniform(0.1, 4000.0);
        CAPTURE(nu);
        CAPTURE(u);
        const auto a = bessel_j_scaled(nu - 1.0, u), b = bessel_j_scaled(nu, u),
                   c = bessel_j_scaled(nu + 1.0, u);
        // common scale so the check is independent of the magnitude
        const auto e = std::max({a.value.exp2, b.value.exp2, c.value.exp2});
        auto at = [&](const ScaledComplex& v) { return std::ldexp(1.0, static_cast<int>(v.exp2 - e)) * v.mant; };
        const cplx lhs = at(a.value) + at(c.value), rhs = 2.0 * nu / u * at(b.value);
        const double scale = std::abs(at(a.value)) + std::abs(at(c.value)) + std::abs(rhs);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
    });
}

TEST_CASE("Bessel strategies agree where both are valid") {
    PrecisionConfig series, hankel;
    series.strategy_override = Strategy::series;
    hankel.strategy_override = Strategy::asymptotic;
    for (cplx nu : {cplx(2.0, 0.0), cplx(3.5, 14.1347), cplx(4.0, 40.0)}) {
        for (double u : {300.0, 1000.0}) {
            CAPTURE(nu);
            CAPTURE(u);
            CHECK(rel(bessel_j(nu, u, series), bessel_j(nu, u, hankel)) <= 1e-10);
        }
    }
}

TEST_CASE("Bessel precision ceiling raises PrecisionError") {
    PrecisionConfig cfg;
    cfg.working_bits = 64;
    cfg.strategy_override = Strategy::series;
    CHECK_THROWS_AS(bessel_j(cplx(3.5, 25.01), 628.3, cfg), PrecisionError);
    try {
        bessel_j(cplx(3.5, 25.01), 628.3, cfg);
    } catch (const PrecisionError& e) {
        CHECK(e.strategy() == "series");
        CHECK(e.achieved() > cfg.target_rel_tol);
    }
    cfg.working_bits = 32;
    CHECK_THROWS_AS(validate(cfg), PreconditionError);
}

TEST_CASE("Sonine quadrature cross-checks the Bessel evaluator") {
    for (cplx nu : {cplx(0.5, 0.0), cplx(2.0, 0.0), cplx(3.5, 14.1347), cplx(4.0, 30.0)}) {
        for (double u : {0.5, 5.0, 30.0}) {
            CAPTURE(nu);
            CAPTURE(u);
            const LineIntegral q = sonine_bessel(nu, u);
            const cplx j = bessel_j(nu, u);
            CHECK(std::abs(q.value - j) <= std::max(1e-7 * std::abs(j), 2.0 * q.abs_error_estimate));
        }
    }
    CHECK_THROWS_AS(sonine_bessel(cplx(-1.5, 0.0), 1.0), DomainError);
}

TEST_CASE("Laplace line integral equals N^{s-1} / Gamma(s)") {
    for (cplx s : {cplx(0.75, 0.0), cplx(2.5, 3.0), cplx(4.0, -14.1347)}) {
        for (double n : {1.0, 10.0, 500.0}) {
            CAPTURE(s);
            CAPTURE(n);
            const LineIntegral li = laplace_line_integral(s, n, 1.0 / n);
            const cplx want = std::exp((s - 1.0) * std::log(n) - log_gamma(s));
            CHECK(rel(li.value, want) <= 1e-8);
            CHECK(li.abs_error_estimate >= 0.0);
        }
    }
    CHECK_THROWS_AS(laplace_line_integral(cplx(-1.0, 0.0), 1.0, 1.0), DomainError);
}

TEST_CASE("ScaledComplex") {
    const auto big = ScaledComplex::from_log(cplx(2000.0, 0.3));
    CHECK(big.log_abs() == doctest::Approx(2000.0).epsilon(1e-14));
    CHECK_THROWS_AS(big.value(), NumericError);
    const auto small = ScaledComplex::from_log(cplx(-1990.0, -0.3));
    const cplx prod = (big * small).value();
    CHECK(std::abs(prod - std::exp(10.0)) <= 1e-10 * std::exp(10.0));
    CHECK(ScaledComplex::from(0.0).is_zero());
}

TEST_CASE("strategy names round-trip") {
    for (Strategy s : {Strategy::automatic, Strategy::series, Strategy::asymptotic, Strategy::quadrature}) {
        CHECK(parse_strategy(to_string(s)) == s);
    }
    CHECK_THROWS(parse_strategy("nonsense"));
}
