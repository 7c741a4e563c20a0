#include <cmath>
#include <string>

#include "linnik/arithmetic.hpp"
#include "linnik/error.hpp"
#include "linnik/summation.hpp"

namespace linnik::arith {

LambdaTable sieve_von_mangoldt(std::size_t n) {
    if (n == 0) throw SizeError("sieve_von_mangoldt: limit must be >= 1");
    if (n > kMaxSieveLimit) {
        throw SizeError("sieve_von_mangoldt: limit " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxSieveLimit));
    }

    // Linear sieve for the smallest prime factor.
    std::vector<std::uint32_t> spf(n + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            const std::size_t m = static_cast<std::size_t>(p) * i;
            if (p > spf[i] || m > n) break;
            spf[m] = p;
        }
    }

    LambdaTable t;
    t.limit_ = n;
    t.values_.assign(n + 1, 0.0);
    t.prime_.assign(n + 1, 0);
    t.exponent_.assign(n + 1, 0);

    std::vector<double> log_p(n + 1, 0.0);
    for (std::uint32_t p : primes) log_p[p] = std::log(static_cast<double>(p));

    for (std::size_t i = 2; i <= n; ++i) {
        const std::uint32_t p = spf[i];
        std::size_t rest = i;
        std::uint8_t e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest == 1) {
            t.values_[i] = log_p[p];
            t.prime_[i] = p;
            t.exponent_[i] = e;
        }
    }
    return t;
}

double chebyshev_psi(const LambdaTable& lambda, std::size_t n) {
    if (n > lambda.limit()) throw RangeError("chebyshev_psi: n exceeds table limit");
    CompensatedSum s;
    for (std::size_t i = 1; i <= n; ++i) s += lambda[i];
    return s.value();
}

}  // namespace linnik::arith
