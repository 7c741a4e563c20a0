#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "linnik/arithmetic.hpp"
#include "linnik/error.hpp"
#include "linnik/summation.hpp"

namespace linnik::arith {

namespace {

void require_table(const LambdaTable& lambda, std::size_t n, const char* who) {
    if (n == 0) throw SizeError(std::string(who) + ": N must be >= 1");
    if (lambda.limit() < n) {
        throw PreconditionError(std::string(who) + ": Lambda table limit " +
                                std::to_string(lambda.limit()) + " < N = " + std::to_string(n));
    }
}

}  // namespace

LinnikTable compute_rq(const LambdaTable& lambda, std::size_t n) {
    require_table(lambda, n, "compute_rq");
    LinnikTable out;
    out.limit = n;
    out.values.assign(n + 1, 0.0);

    const auto lam = lambda.values();
    double* rq = out.values.data();
    for (std::size_t l1 = 1; l1 * l1 + 1 < n; ++l1) {
        for (std::size_t l2 = 1; l1 * l1 + l2 * l2 < n; ++l2) {
            const std::size_t s = l1 * l1 + l2 * l2;
            // r_Q(m) += Lambda(m - s) for s < m <= n
            const double* src = lam.data() + 1;
            double* dst = rq + s + 1;
            const std::size_t len = n - s;
            for (std::size_t i = 0; i < len; ++i) dst[i] += src[i];
        }
    }
    return out;
}

std::vector<PrimeCounts> compute_rq_exact(const LambdaTable& lambda, std::size_t n) {
    require_table(lambda, n, "compute_rq_exact");
    std::vector<std::map<std::uint32_t, std::uint32_t>> acc(n + 1);
    for (std::size_t l1 = 1; l1 * l1 + 1 < n; ++l1) {
        for (std::size_t l2 = 1; l1 * l1 + l2 * l2 < n; ++l2) {
            const std::size_t s = l1 * l1 + l2 * l2;
            for (std::size_t m = s + 1; m <= n; ++m) {
                const std::uint32_t p = lambda.prime_of(m - s);
                if (p != 0) ++acc[m][p];
            }
        }
    }
    std::vector<PrimeCounts> out(n + 1);
    for (std::size_t m = 0; m <= n; ++m) out[m].assign(acc[m].begin(), acc[m].end());
    return out;
}

void validate(const CesaroParams& params) {
    if (params.n < 4) {
        throw PreconditionError("CesaroParams: N must be >= 4 (got " + std::to_string(params.n) +
                                ")");
    }
    if (!std::isfinite(params.k)) throw PreconditionError("CesaroParams: k must be finite");
    if (params.k < 0.0) throw DomainError("cesaro_lhs: k < 0 makes (N - n)^k undefined at n = N");
}

CesaroResult cesaro_lhs(const LinnikTable& rq, const CesaroParams& params) {
    validate(params);
    if (rq.limit < params.n) {
        throw PreconditionError("cesaro_lhs: r_Q table limit " + std::to_string(rq.limit) +
                                " < N = " + std::to_string(params.n));
    }
    const double k = params.k;
    const double inv_gamma = 1.0 / std::tgamma(k + 1.0);
    CesaroResult out;
    out.zero_power_convention = (k == 0.0);

    CompensatedSum s;
    for (std::size_t n = params.n; n >= 1; --n) {
        const double gap = static_cast<double>(params.n - n);
        double w;
        if (gap == 0.0) {
            w = (k == 0.0) ? 1.0 : 0.0;
        } else {
            w = std::pow(gap, k);
        }
        s += rq[n] * w;
    }
    out.value = s.value() * inv_gamma;
    return out;
}

}  // namespace linnik::arith
