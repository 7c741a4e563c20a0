#pragma once

// Complex log-gamma, Bessel J of complex order at real argument, and the
// vertical-line integrals (Laplace kernel, Sonine representation) used to
// cross-check them.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace linnik::specfun {

using cplx = std::complex<double>;

enum class Strategy { automatic, series, asymptotic, quadrature };

std::string to_string(Strategy s);
/// Accepts "auto", "series", "asymptotic", "quadrature".
Strategy parse_strategy(const std::string& name);

struct PrecisionConfig {
    /// Ceiling on the MPFR mantissa length an evaluation may escalate to.
    int working_bits = 16384;
    double target_rel_tol = 1e-10;
    std::optional<Strategy> strategy_override;
};

/// Throws PreconditionError unless working_bits >= 53 and 0 < tol < 1.
void validate(const PrecisionConfig& cfg);

/// A complex number mant * 2^exp2, for values whose modulus leaves the double
/// range (J of orders with large imaginary part grows like e^{pi |Im nu| / 2}).
struct ScaledComplex {
    cplx mant{0.0, 0.0};
    std::int64_t exp2 = 0;

    static ScaledComplex from(cplx z);
    /// exp(log_value) without overflow.
    static ScaledComplex from_log(cplx log_value);

    ScaledComplex& normalize();
    /// Throws NumericError when the value does not fit in a double.
    cplx value() const;
    /// log|z|; -inf for zero.
    double log_abs() const;
    bool is_zero() const { return mant == cplx{0.0, 0.0}; }

    friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b);
    friend ScaledComplex operator*(ScaledComplex a, cplx b);
    ScaledComplex conj() const { return {std::conj(mant), exp2}; }
};

/// Principal-branch log Gamma(s): the continuation from the positive real
/// axis with the cut along the negative real axis, so that
/// log_gamma(s) = log_gamma(s + n) - sum_{j<n} Log(s + j).
/// Throws PoleError at nonpositive integers.
cplx log_gamma(cplx s);
/// exp(log_gamma(s)).
cplx gamma(cplx s);
/// Gamma(rho) / Gamma(rho + offset) from a single exponential.
cplx gamma_ratio(cplx rho, double offset);
cplx log_gamma_ratio(cplx rho, double offset);

struct BesselResult {
    ScaledComplex value;
    Strategy strategy = Strategy::automatic;  // the one that produced value
    int bits = 53;                            // 53 means plain double
    double rel_error_estimate = 0.0;
};

/// J_nu(u) for u >= 0. Strategy selection and error contract are described in
/// bessel.cpp. Throws DomainError (u < 0, or u == 0 with Re nu <= 0, nu != 0)
/// and PrecisionError when cfg.target_rel_tol cannot be met within
/// cfg.working_bits.
BesselResult bessel_j_scaled(cplx nu, double u, const PrecisionConfig& cfg = {});
/// As bessel_j_scaled, converted to double (RangeError on overflow).
cplx bessel_j(cplx nu, double u, const PrecisionConfig& cfg = {});

struct LineIntegral {
    cplx value;
    double abs_error_estimate = 0.0;
    double y_max = 0.0;  // quadrature covers |Im z| <= y_max, the rest is an
                         // integration-by-parts tail expansion
};

/// (1/2 pi i) int_{(a)} e^{N z} z^{-s} dz, which equals N^{s-1} / Gamma(s).
/// The integrand grows like e^{N a}, so a should be of order 1/N.
/// Re s > 0 required; for Re s <= 1 the tail is only conditionally convergent
/// and is handled by the asymptotic tail expansion, which can run out of
/// budget (TruncationError).
LineIntegral laplace_line_integral(cplx s, double n, double a, const PrecisionConfig& cfg = {});

/// J_nu(u) from the Sonine representation
///   J_nu(u) = (u/2)^nu (1/2 pi i) int_{(a)} e^{t - u^2/(4t)} t^{-nu-1} dt,
/// Re nu > -1. Double-precision quadrature; cost grows like u^2, so it is a
/// cross-check for moderate u rather than a production path.
LineIntegral sonine_bessel(cplx nu, double u, double a = 1.0, const PrecisionConfig& cfg = {});

namespace detail {

// Extended-precision kernels (MPFR). Each returns J_nu(u) for Im nu >= 0
// computed at `bits` of mantissa together with the quantities needed to
// verify that the precision sufficed.
struct MpSeriesResult {
    ScaledComplex sum;          // sum_m (-u^2/4)^m / (m! (nu+1)_m)
    double log2_max_term = 0;   // log2 of the largest |term|
    std::size_t terms = 0;
};
MpSeriesResult mp_series(cplx nu, double u, int bits, double tol);

struct MpHankelResult {
    ScaledComplex value;       // J_nu(u)
    double log2_loss = 0;      // log2 of cancellation in P cos - Q sin and in the P, Q sums
    double rel_truncation = 0; // first omitted term relative to the result
    bool converged = false;
};
MpHankelResult mp_hankel(cplx nu, double u, int bits, double tol);

}  // namespace detail

}  // namespace linnik::specfun
