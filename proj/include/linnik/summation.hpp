#pragma once

#ifdef __FAST_MATH__
#error "compensated summation is defeated by -ffast-math"
#endif

#include <cmath>
#include <complex>

namespace linnik {

/// Neumaier (improved Kahan) accumulator. Each add is exact up to the final
/// rounding of sum + carry, so the total error stays within a couple of ulps
/// of the exact sum regardless of term ordering or magnitude spread.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.carry_);
        return *this;
    }

    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    CompensatedComplexSum& operator+=(std::complex<double> z) noexcept {
        add(z);
        return *this;
    }
    CompensatedComplexSum& operator+=(const CompensatedComplexSum& other) noexcept {
        re_ += other.re_;
        im_ += other.im_;
        return *this;
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// Exact product split: a*b == p + e with p = fl(a*b).
inline void two_product(double a, double b, double& p, double& e) noexcept {
    p = a * b;
    e = std::fma(a, b, -p);
}

/// e^{-i*m*y} for integer m with the phase m*y carried to twice working
/// precision. Plain fl(m*y) loses ~m*ulp(y) radians once m*y is large.
inline std::complex<double> unit_phase(double m, double y) noexcept {
    double p, e;
    two_product(m, y, p, e);
    const double c = std::cos(p);
    const double s = std::sin(p);
    // cos(p+e) ~ c - e*s, sin(p+e) ~ s + e*c; |e| <= ulp(p)/2
    return {c - e * s, -(s + e * c)};
}

}  // namespace linnik
