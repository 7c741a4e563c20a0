#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "linnik/arithmetic.hpp"
#include "linnik/error.hpp"
#include "oracles.hpp"
#include "property.hpp"

using namespace linnik;
using namespace linnik::arith;
using cplx = std::complex<double>;

namespace {

// p if n = p^j by trial division, else 0
std::size_t prime_base(std::size_t n) {
    if (n < 2) return 0;
    std::size_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n % p != 0) p = n;
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

// (prime -> count) for every n <= limit, from the defining triple loop
std::vector<std::map<std::size_t, std::size_t>> brute_counts(std::size_t limit) {
    std::vector<std::map<std::size_t, std::size_t>> out(limit + 1);
    for (std::size_t a = 2; a <= limit; ++a) {
        const std::size_t p = prime_base(a);
        if (p == 0) continue;
        for (std::size_t b = 1; a + b * b <= limit; ++b) {
            for (std::size_t c = 1; a + b * b + c * c <= limit; ++c) ++out[a + b * b + c * c][p];
        }
    }
    return out;
}

}  // namespace

TEST_CASE("von Mangoldt sieve agrees with trial division") {
    const auto lam = sieve_von_mangoldt(5000);
    CHECK(lam.limit() == 5000);
    for (std::size_t n = 1; n <= 5000; ++n) {
        const std::size_t p = prime_base(n);
        CAPTURE(n);
        CHECK(lam.prime_of(n) == p);
        CHECK(lam[n] == (p ? std::log(static_cast<double>(p)) : 0.0));
        if (p) CHECK(std::pow(static_cast<double>(p), lam.exponent_of(n)) == static_cast<double>(n));
    }
}

TEST_CASE("sieve limits") {
    CHECK_THROWS_AS(sieve_von_mangoldt(0), SizeError);
    CHECK_THROWS_AS(sieve_von_mangoldt(kMaxSieveLimit + 1), SizeError);
    const auto lam = sieve_von_mangoldt(10);
    CHECK_THROWS_AS(chebyshev_psi(lam, 11), RangeError);
}

TEST_CASE("chebyshev psi") {
    const auto lam = sieve_von_mangoldt(100);
    // log lcm(1..10) = log 2520
    CHECK(chebyshev_psi(lam, 10) == doctest::Approx(std::log(2520.0)).epsilon(1e-15));
    CHECK(chebyshev_psi(lam, 1) == 0.0);
}

TEST_CASE("r_Q matches the triple loop exactly for n <= 500") {
    const auto lam = sieve_von_mangoldt(500);
    const auto rq = compute_rq(lam, 500);
    const auto exact = compute_rq_exact(lam, 500);
    const auto brute = brute_counts(500);
    REQUIRE(rq.limit == 500);
    CHECK(rq[0] == 0.0);
    for (std::size_t n = 1; n <= 500; ++n) {
        CAPTURE(n);
        std::map<std::size_t, std::size_t> got;
        for (auto [p, c] : exact[n]) got[p] = c;
        CHECK(got == brute[n]);
        double want = 0.0;
        for (auto [p, c] : brute[n]) want += static_cast<double>(c) * std::log(static_cast<double>(p));
        CHECK(std::fabs(rq[n] - want) <= 1e-13 * std::max(1.0, want));
    }
    // smallest representable n is 2 + 1 + 1
    CHECK(rq[1] == 0.0);
    CHECK(rq[3] == 0.0);
    CHECK(rq[4] == doctest::Approx(std::log(2.0)));
}

TEST_CASE("Cesaro sum against the frozen high-precision oracle") {
    const auto lam = sieve_von_mangoldt(500);
    const auto rq = compute_rq(lam, 500);
    for (const auto& c : oracle::cesaro) {
        CAPTURE(c.n);
        CAPTURE(c.k);
        const double got = cesaro_lhs(rq, {c.n, c.k}).value;
        CHECK(std::fabs(got - c.value) <= 1e-12 * std::fabs(c.value));
    }
}

TEST_CASE("Cesaro parameters") {
    const auto lam = sieve_von_mangoldt(100);
    const auto rq = compute_rq(lam, 100);
    CHECK_THROWS_AS(cesaro_lhs(rq, {3, 2.0}), PreconditionError);
    CHECK_THROWS_AS(cesaro_lhs(rq, {101, 2.0}), PreconditionError);
    CHECK_THROWS_AS(cesaro_lhs(rq, {50, std::nan("")}), PreconditionError);
    CHECK_THROWS_AS(cesaro_lhs(rq, {50, -0.5}), DomainError);
    CHECK(cesaro_lhs(rq, {4, 2.0}).value == 0.0);

    // k = 0 counts the n = N term with 0^0 = 1
    const auto r0 = cesaro_lhs(rq, {50, 0.0});
    CHECK(r0.zero_power_convention);
    double partial = 0.0;
    for (std::size_t n = 1; n <= 50; ++n) partial += rq[n];
    CHECK(r0.value == doctest::Approx(partial).epsilon(1e-14));
}

TEST_CASE("Cesaro sum is nondecreasing in N") {
    const auto lam = sieve_von_mangoldt(400);
    const auto rq = compute_rq(lam, 400);
    prop::for_all(50, 21, [&](prop::Gen& g) {
        const std::size_t n = g.integer(4, 399);
        const double k = g.uniform(0.0, 4.0);
        CHECK(cesaro_lhs(rq, {n + 1, k}).value >= cesaro_lhs(rq, {n, k}).value);
    });
}

TEST_CASE("omega2 truncation: tail bound covers the discarded part") {
    prop::for_all(100, 22, [](prop::Gen& g) {
        const ComplexPoint z{g.log_uniform(1e-3, 5.0), g.uniform(-10.0, 10.0)};
        const std::size_t c = omega2_cutoff(z.a, 1e-6);
        const auto lo = omega2(z, c), hi = omega2(z, 2 * c);
        CHECK(std::abs(lo.value - hi.value) <= lo.tail_bound + 1e-15 * std::abs(hi.value) * c);
    });
    CHECK_THROWS_AS(omega2({0.01, 0.0}, 10), TruncationError);
}

TEST_CASE("S~ truncation: tail bound covers the discarded part") {
    const auto lam = sieve_von_mangoldt(200000);
    prop::for_all(30, 23, [&](prop::Gen& g) {
        const ComplexPoint z{g.log_uniform(1e-3, 1.0), g.uniform(-1.0, 1.0)};
        const std::size_t c = s_tilde_cutoff(z.a, 1e-3);
        if (2 * c > lam.limit()) return;
        const auto lo = s_tilde(lam, z, c), hi = s_tilde(lam, z, 2 * c);
        CHECK(std::abs(lo.value - hi.value) <= lo.tail_bound);
    });
}

TEST_CASE("theta functional equation theta3(z) = sqrt(pi/z) theta3(pi^2/z)") {
    auto residual = [](cplx z) {
        const cplx w = std::numbers::pi * std::numbers::pi / z;
        const cplx lhs = theta3_auto({z.real(), z.imag()}).value;
        const cplx rhs = std::sqrt(std::numbers::pi / z) * theta3_auto({w.real(), w.imag()}).value;
        return std::pair{std::abs(lhs - rhs), std::abs(lhs)};
    };
    // relative to |theta3(z)| wherever theta3 does not cancel far below its majorant
    prop::for_all(400, 24, [&](prop::Gen& g) {
        const cplx z(g.log_uniform(0.02, 50.0), g.uniform(-10.0, 10.0));
        CAPTURE(z);
        const auto [err, mag] = residual(z);
        if (mag > 1e-2 * (1.0 + 2.0 * omega2_real(z.real()))) CHECK(err <= 1e-12 * mag);
    });
    // everywhere, relative to the majorant theta3(a)
    prop::for_all(200, 27, [&](prop::Gen& g) {
        const cplx z(g.log_uniform(0.02, 50.0), g.uniform(-10.0, 10.0));
        CAPTURE(z);
        CHECK(residual(z).first <= 1e-12 * (1.0 + 2.0 * omega2_real(z.real())));
    });
}

TEST_CASE("omega2_real is continuous across the modular switch and decreasing") {
    CHECK(omega2_real(1.0 - 1e-12) == doctest::Approx(omega2_real(1.0)).epsilon(1e-11));
    prop::for_all(200, 25, [](prop::Gen& g) {
        const double x = g.log_uniform(1e-6, 100.0);
        const double direct = omega2_auto({x, 0.0}).value.real();
        if (x > 1e-3) CHECK(omega2_real(x) == doctest::Approx(direct).epsilon(1e-13));
        CHECK(omega2_real(x * 1.01) < omega2_real(x));
    });
    CHECK_THROWS_AS(omega2_real(0.0), DomainError);
}

TEST_CASE("trivial bound |omega2(z)| <= omega2(a)") {
    prop::for_all(200, 26, [](prop::Gen& g) {
        const ComplexPoint z{g.log_uniform(1e-2, 2.0), g.uniform(-20.0, 20.0)};
        CHECK(std::abs(omega2_auto(z).value) <= omega2_real(z.a) * (1 + 1e-13));
    });
}
