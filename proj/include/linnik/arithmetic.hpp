#pragma once

// Exact arithmetic side: von Mangoldt sieve, the weighted count r_Q(n) of
// representations n = m1 + m2^2 + m3^2 (weight Lambda(m1), m2, m3 >= 1), the
// Cesaro-weighted sum, and truncated generating functions S~, omega2, theta3.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace linnik::arith {

/// Largest sieve limit accepted; beyond this a segmented sieve would be needed.
inline constexpr std::size_t kMaxSieveLimit = 100'000'000;

/// Lambda(n) for 1 <= n <= limit. Alongside the floating value log p the
/// table keeps the prime and exponent of every prime power, so sums can be
/// regrouped per prime for an exactness audit.
class LambdaTable {
public:
    LambdaTable() = default;

    std::size_t limit() const noexcept { return limit_; }

    /// Lambda(n); n must satisfy 1 <= n <= limit().
    double operator[](std::size_t n) const noexcept { return values_[n]; }

    /// p when n = p^j, else 0.
    std::uint32_t prime_of(std::size_t n) const noexcept { return prime_[n]; }
    /// j when n = p^j, else 0.
    std::uint8_t exponent_of(std::size_t n) const noexcept { return exponent_[n]; }

    /// Indexed 0..limit; entry 0 is unused and holds 0.
    std::span<const double> values() const noexcept { return values_; }

private:
    friend LambdaTable sieve_von_mangoldt(std::size_t n);

    std::size_t limit_ = 0;
    std::vector<double> values_;
    std::vector<std::uint32_t> prime_;
    std::vector<std::uint8_t> exponent_;
};

/// Smallest-prime-factor sieve; prime powers detected by repeated exact
/// division. Throws SizeError for n == 0 or n > kMaxSieveLimit.
LambdaTable sieve_von_mangoldt(std::size_t n);

/// psi(N) = sum_{n <= N} Lambda(n), compensated.
double chebyshev_psi(const LambdaTable& lambda, std::size_t n);

struct LinnikTable {
    std::size_t limit = 0;
    std::vector<double> values;  // indexed 0..limit, values[0] == 0

    double operator[](std::size_t n) const noexcept { return values[n]; }
};

/// r_Q(n) for n <= N. Lattice pairs (l1, l2) outer, n inner: for every pair
/// with s = l1^2 + l2^2 < N the shifted table Lambda(n - s) is added. Within
/// each n the contributions therefore arrive in (l1, l2) lexicographic order.
LinnikTable compute_rq(const LambdaTable& lambda, std::size_t n);

/// r_Q(n) grouped per prime: r_Q(n) = sum_p count_p(n) * log p exactly.
/// Entry n is a sorted list of (p, count_p(n)).
using PrimeCounts = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
std::vector<PrimeCounts> compute_rq_exact(const LambdaTable& lambda, std::size_t n);

struct CesaroParams {
    std::size_t n = 0;
    double k = 0.0;
};

/// Throws on N < 4, non-finite k, or k < 0.
void validate(const CesaroParams& params);

struct CesaroResult {
    double value = 0.0;
    /// k == 0 was evaluated with the convention 0^0 = 1 for the n = N term.
    bool zero_power_convention = false;
};

/// sum_{n <= N} r_Q(n) (N - n)^k / Gamma(k + 1), descending n, compensated.
CesaroResult cesaro_lhs(const LinnikTable& rq, const CesaroParams& params);

/// z = a + i y with a > 0.
struct ComplexPoint {
    double a = 1.0;
    double y = 0.0;

    std::complex<double> value() const noexcept { return {a, y}; }
};

/// Throws DomainError unless a > 0 and both parts are finite.
void validate(const ComplexPoint& z);

struct SeriesValue {
    std::complex<double> value;
    double tail_bound = 0.0;  // bound on |discarded remainder|
    std::size_t cutoff = 0;
};

/// Smallest cutoff C with tail bound of S~ below tol at real part a.
std::size_t s_tilde_cutoff(double a, double tol);
/// Smallest cutoff M with M^2 a >= 40 and the omega2 tail bound below tol.
std::size_t omega2_cutoff(double a, double tol);

/// S~(z) = sum_{m <= cutoff} Lambda(m) e^{-m z}. The table must reach cutoff.
/// The tail bound majorises Lambda(m) <= m: sum_{m > C} m e^{-m a}.
SeriesValue s_tilde(const LambdaTable& lambda, ComplexPoint z, std::size_t cutoff);

/// omega2(z) = sum_{1 <= m <= cutoff} e^{-m^2 z}. Requires cutoff^2 a >= 40.
SeriesValue omega2(ComplexPoint z, std::size_t cutoff);

/// theta3(z) = 1 + 2 omega2(z), built from the same truncated omega2 sum.
SeriesValue theta3(ComplexPoint z, std::size_t cutoff);

/// omega2 with an automatically chosen cutoff (tolerance tol).
SeriesValue omega2_auto(ComplexPoint z, double tol = 1e-17);
SeriesValue theta3_auto(ComplexPoint z, double tol = 1e-17);

/// omega2(x) for real x > 0, switching to the modular form
/// omega2(x) = (sqrt(pi/x) theta3(pi^2/x) - 1) / 2 when x is small.
double omega2_real(double x);

}  // namespace linnik::arith
