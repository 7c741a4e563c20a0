// J_nu(u), complex nu, real u >= 0.
//
// Two production strategies:
//   series      J = (u/2)^nu / Gamma(nu+1) * sum_m (-u^2/4)^m / (m! (nu+1)_m)
//   asymptotic  J = sqrt(2/(pi u)) (P cos chi - Q sin chi), chi = u - nu pi/2 - pi/4
// Each is first planned in log space (term count, largest term, expected
// cancellation), the cheaper feasible plan is run in double when its loss
// fits into 53 bits and in MPFR otherwise. After the run the actual loss is
// measured from the computed sum; if the precision used was insufficient the
// evaluation is repeated with more bits, up to cfg.working_bits. Beyond that
// a PrecisionError is raised instead of returning a degraded value.
//
// Orders with Im nu < 0 are evaluated as conj(J_{conj nu}(u)), so conjugate
// symmetry holds exactly; real orders return an exactly real value.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/specfun.hpp"

namespace linnik::specfun {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::automatic: return "auto";
        case Strategy::series: return "series";
        case Strategy::asymptotic: return "asymptotic";
        case Strategy::quadrature: return "quadrature";
    }
    return "auto";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "auto") return Strategy::automatic;
    if (name == "series") return Strategy::series;
    if (name == "asymptotic") return Strategy::asymptotic;
    if (name == "quadrature") return Strategy::quadrature;
    throw PreconditionError("unknown Bessel strategy '" + name + "'");
}

void validate(const PrecisionConfig& cfg) {
    if (cfg.working_bits < 53) {
        throw PreconditionError("PrecisionConfig: working_bits must be >= 53 (got " +
                                std::to_string(cfg.working_bits) + ")");
    }
    if (!(cfg.target_rel_tol > 0.0 && cfg.target_rel_tol < 1.0)) {
        throw PreconditionError("PrecisionConfig: target_rel_tol must lie in (0, 1)");
    }
}

// ---- ScaledComplex -------------------------------------------------------------

ScaledComplex ScaledComplex::from(cplx z) { return ScaledComplex{z, 0}.normalize(); }

ScaledComplex ScaledComplex::from_log(cplx log_value) {
    if (log_value.real() == -std::numeric_limits<double>::infinity()) return {};
    const double r = log_value.real() / std::numbers::ln2;
    const double e = std::floor(r);
    const double mag = std::exp2(r - e);
    ScaledComplex out{std::polar(mag, log_value.imag()), static_cast<std::int64_t>(e)};
    return out.normalize();
}

ScaledComplex& ScaledComplex::normalize() {
    const double big = std::max(std::fabs(mant.real()), std::fabs(mant.imag()));
    if (big == 0.0) {
        exp2 = 0;
        return *this;
    }
    int e = 0;
    std::frexp(big, &e);
    mant = cplx(std::ldexp(mant.real(), -e), std::ldexp(mant.imag(), -e));
    exp2 += e;
    return *this;
}

cplx ScaledComplex::value() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp2 > 1024) throw NumericError("ScaledComplex: value overflows double");
    if (exp2 < -1100) return {0.0, 0.0};
    const int e = static_cast<int>(exp2);
    return {std::ldexp(mant.real(), e), std::ldexp(mant.imag(), e)};
}

double ScaledComplex::log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant)) + static_cast<double>(exp2) * std::numbers::ln2;
}

ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) {
    a.mant *= b.mant;
    a.exp2 += b.exp2;
    return a.normalize();
}

ScaledComplex operator*(ScaledComplex a, cplx b) { return a * ScaledComplex::from(b); }

// ---- evaluation ------------------------------------------------------------------

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGuardBits = 16.0;

double bits_for(double tol) { return -std::log2(tol); }

struct Plan {
    bool feasible = false;
    double terms = 0;
    double bits = 0;  // mantissa bits needed
    double loss = 0;  // log2 of expected cancellation
    double cost = std::numeric_limits<double>::infinity();
};

double mp_weight(double bits) {
    if (bits <= 53.0) return 1.0;
    return 12.0 * (1.0 + bits / 256.0);
}

// log|(u/2)^nu / Gamma(nu+1)| and its log-space value.
cplx log_prefactor(cplx nu, double u) { return nu * std::log(0.5 * u) - log_gamma(nu + 1.0); }

// Rough log|J| used only for planning.
double log_j_guess(cplx nu, double u) {
    const double an = std::abs(nu);
    if (u > an + 1.0) {
        return 0.5 * std::log(2.0 / (std::numbers::pi * u)) +
               std::max(0.0, std::numbers::pi * std::fabs(nu.imag()) / 2.0 - std::numbers::ln2);
    }
    return log_prefactor(nu, u).real();
}

Plan plan_series(cplx nu, double u, double tol) {
    Plan p;
    const double q = 0.25 * u * u;
    const double stop = bits_for(tol) + 12.0;
    double lt = 0.0, lmax = 0.0;
    const double lpre = log_prefactor(nu, u).real() / std::numbers::ln2;
    const double ls = log_j_guess(nu, u) / std::numbers::ln2 - lpre;
    double m = 1;
    for (; m < 2e6; m += 1.0) {
        lt += std::log2(q / (m * std::abs(nu + m)));
        lmax = std::max(lmax, lt);
        if (m * std::abs(nu + m) > q && lt < ls - stop) break;
    }
    p.feasible = true;
    p.terms = m;
    p.loss = std::max(0.0, lmax - ls) + std::log2(m);
    p.bits = p.loss + bits_for(tol) + kGuardBits;
    p.cost = m * mp_weight(p.bits);
    return p;
}

Plan plan_hankel(cplx nu, double u, double tol) {
    Plan p;
    const double stop = bits_for(tol) + 12.0;
    const double an = std::abs(nu);
    const cplx nu4 = 4.0 * nu * nu;
    double la = 0.0, lmax = 0.0;
    double j = 1;
    for (; j < 4.0 * u + 4.0 * an + 64.0; j += 1.0) {
        const double odd = 2.0 * j - 1.0;
        const double ratio = std::abs(nu4 - odd * odd) / (8.0 * j * u);
        if (odd > 2.0 * an && ratio >= 1.0) return p;
        la += std::log2(ratio);
        lmax = std::max(lmax, la);
        if (la < -stop) {
            p.feasible = true;
            break;
        }
    }
    if (!p.feasible) return p;
    p.terms = j;
    p.loss = lmax;
    p.bits = lmax + bits_for(tol) + kGuardBits + std::log2(u + an + 1.0);
    p.cost = j * mp_weight(p.bits) + 30.0 * mp_weight(p.bits);
    return p;
}

BesselResult finish_series(cplx nu, double u, const ScaledComplex& sum, double rel_err, int bits) {
    BesselResult r;
    r.value = ScaledComplex::from_log(log_prefactor(nu, u)) * sum;
    r.strategy = Strategy::series;
    r.bits = bits;
    r.rel_error_estimate = rel_err;
    return r;
}

// Error of the prefactor exp(nu log(u/2) - log Gamma(nu+1)) assembled in double.
double prefactor_error(cplx nu, double u) {
    return 4.0 * kEps *
           (std::abs(nu * std::log(0.5 * u)) + std::abs(log_gamma(nu + 1.0)) + 1.0);
}

BesselResult run_series(cplx nu, double u, const PrecisionConfig& cfg, const Plan& plan) {
    const double tol = cfg.target_rel_tol;
    const double pre_err = prefactor_error(nu, u);
    if (pre_err > tol) {
        throw PrecisionError("bessel_j: prefactor phase exceeds double resolution", "series",
                             pre_err);
    }
    const double stop = bits_for(tol) + 12.0;
    const double q = 0.25 * u * u;

    if (plan.loss + bits_for(tol) <= 50.0) {
        cplx t = 1.0, s = 1.0;
        double sum_abs = 1.0;
        double m = 1;
        for (; m < 2e6; m += 1.0) {
            t *= -q / (m * (nu + m));
            s += t;
            const double at = std::abs(t);
            sum_abs += at;
            if (m * std::abs(nu + m) > q && at < std::abs(s) * std::exp2(-stop)) break;
        }
        const double err = 4.0 * kEps * sum_abs / std::abs(s) + pre_err;
        if (err <= tol) return finish_series(nu, u, ScaledComplex::from(s), err, 53);
    }

    int bits = std::max(64, static_cast<int>(std::ceil(plan.bits)));
    double achieved = 1.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (bits > cfg.working_bits) {
            throw PrecisionError("bessel_j: series needs " + std::to_string(bits) +
                                     " bits, ceiling is " + std::to_string(cfg.working_bits),
                                 "series", achieved);
        }
        const auto r = detail::mp_series(nu, u, bits, tol);
        const double lsum = r.sum.log_abs() / std::numbers::ln2;
        const double loss = std::max(0.0, r.log2_max_term - lsum);
        const double lterms = std::log2(static_cast<double>(r.terms) + 1.0);
        const double err = std::exp2(loss + lterms + 1.0 - bits) + pre_err;
        if (err <= tol) return finish_series(nu, u, r.sum, err, bits);
        achieved = std::min(1.0, err);
        const int needed =
            static_cast<int>(std::ceil(loss + lterms + bits_for(tol) + kGuardBits));
        bits = std::max(needed, bits + 32);
    }
    throw PrecisionError("bessel_j: series precision escalation failed", "series", achieved);
}

// Double-precision Hankel expansion; returns false when its error estimate
// misses the tolerance.
bool hankel_double(cplx nu, double u, double tol, BesselResult& out) {
    const double stop = bits_for(tol) + 12.0;
    const double an = std::abs(nu);
    const cplx nu4 = 4.0 * nu * nu;
    cplx a = 1.0, p = 1.0, q = 0.0;
    double sum_abs = 1.0, last = 1.0;
    bool converged = false;
    for (double j = 1; j < 4.0 * u + 4.0 * an + 64.0; j += 1.0) {
        const double odd = 2.0 * j - 1.0;
        const cplx f = nu4 - odd * odd;
        if (odd > 2.0 * an && std::abs(f) / (8.0 * j * u) >= 1.0) break;
        a *= f / (8.0 * j * u);
        const double aa = std::abs(a);
        sum_abs += aa;
        const long ji = static_cast<long>(j);
        const double sign = ((ji / 2) % 2 == 1) ? -1.0 : 1.0;
        if (ji % 2 == 0) {
            p += sign * a;
        } else {
            q += sign * a;
        }
        last = aa;
        if (aa < std::exp2(-stop)) {
            converged = true;
            break;
        }
    }
    if (!converged) return false;
    const cplx chi = cplx(u - nu.real() * std::numbers::pi / 2.0 - std::numbers::pi / 4.0,
                          -nu.imag() * std::numbers::pi / 2.0);
    if (std::fabs(chi.imag()) > 700.0) return false;
    const cplx c = std::cos(chi), s = std::sin(chi);
    const cplx comb = p * c - q * s;
    const double mag = std::abs(comb);
    if (mag == 0.0) return false;
    const double parts = std::abs(p) * std::abs(c) + std::abs(q) * std::abs(s);
    const double phase_err = 4.0 * kEps * (u + an * 2.0 + 1.0);
    const double cs = std::max(std::abs(c), std::abs(s));
    const double err = (4.0 * kEps * sum_abs * cs + phase_err * (std::abs(p) * std::abs(s) +
                                                                 std::abs(q) * std::abs(c)) +
                        4.0 * kEps * parts + last * cs) /
                       mag;
    if (err > tol) return false;
    out.value = ScaledComplex::from(comb) * cplx(std::sqrt(2.0 / (std::numbers::pi * u)), 0.0);
    out.strategy = Strategy::asymptotic;
    out.bits = 53;
    out.rel_error_estimate = err;
    return true;
}

// Throws PrecisionError when the expansion cannot reach the tolerance.
BesselResult run_hankel(cplx nu, double u, const PrecisionConfig& cfg, const Plan& plan) {
    const double tol = cfg.target_rel_tol;
    BesselResult out;
    if (plan.loss + bits_for(tol) <= 50.0 && hankel_double(nu, u, tol, out)) return out;

    int bits = std::max(64, static_cast<int>(std::ceil(plan.bits)));
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (bits > cfg.working_bits) {
            throw PrecisionError("bessel_j: asymptotic expansion needs " + std::to_string(bits) +
                                     " bits, ceiling is " + std::to_string(cfg.working_bits),
                                 "asymptotic", 1.0);
        }
        const auto r = detail::mp_hankel(nu, u, bits, tol);
        if (!r.converged) {
            throw PrecisionError("bessel_j: asymptotic expansion diverges before tolerance",
                                 "asymptotic", r.rel_truncation);
        }
        const double lphase = std::log2(u + std::abs(nu) + 1.0);
        const double err = std::exp2(r.log2_loss + lphase + 2.0 - bits) + r.rel_truncation;
        if (err <= tol) {
            out.value = r.value;
            out.strategy = Strategy::asymptotic;
            out.bits = bits;
            out.rel_error_estimate = err;
            return out;
        }
        if (r.rel_truncation > tol) {
            throw PrecisionError("bessel_j: asymptotic truncation error above tolerance",
                                 "asymptotic", r.rel_truncation);
        }
        bits = std::max(bits + 32, static_cast<int>(std::ceil(r.log2_loss + lphase +
                                                              bits_for(tol) + kGuardBits)));
    }
    throw PrecisionError("bessel_j: asymptotic precision escalation failed", "asymptotic", 1.0);
}

BesselResult run_quadrature(cplx nu, double u, const PrecisionConfig& cfg) {
    const LineIntegral li = sonine_bessel(nu, u, 1.0, cfg);
    const double mag = std::abs(li.value);
    const double rel = mag > 0.0 ? li.abs_error_estimate / mag : 1.0;
    if (!(rel <= cfg.target_rel_tol)) {
        throw PrecisionError("bessel_j: Sonine quadrature misses tolerance", "quadrature", rel);
    }
    BesselResult out;
    out.value = ScaledComplex::from(li.value);
    out.strategy = Strategy::quadrature;
    out.bits = 53;
    out.rel_error_estimate = rel;
    return out;
}

// Im nu >= 0, u > 0, nu not a negative integer.
BesselResult dispatch(cplx nu, double u, const PrecisionConfig& cfg) {
    const Strategy s = cfg.strategy_override.value_or(Strategy::automatic);
    const double tol = cfg.target_rel_tol;
    switch (s) {
        case Strategy::series: return run_series(nu, u, cfg, plan_series(nu, u, tol));
        case Strategy::asymptotic: {
            const Plan h = plan_hankel(nu, u, tol);
            if (!h.feasible) {
                throw PrecisionError("bessel_j: asymptotic expansion diverges before tolerance",
                                     "asymptotic", 1.0);
            }
            return run_hankel(nu, u, cfg, h);
        }
        case Strategy::quadrature: return run_quadrature(nu, u, cfg);
        case Strategy::automatic: break;
    }
    const Plan h = plan_hankel(nu, u, tol);
    if (h.feasible && h.loss + bits_for(tol) <= 50.0) {
        // Nothing is cheaper than a double Hankel sum; skip planning the series.
        BesselResult out;
        if (hankel_double(nu, u, tol, out)) return out;
    }
    // The series needs at least ~u/2 terms; no need to plan it when the
    // asymptotic expansion is already cheaper than that.
    if (h.feasible && h.cost < 0.5 * u) return run_hankel(nu, u, cfg, h);
    const Plan sr = plan_series(nu, u, tol);
    if (h.feasible && h.cost <= sr.cost) {
        try {
            return run_hankel(nu, u, cfg, h);
        } catch (const PrecisionError&) {
            // fall through to the series
        }
    }
    return run_series(nu, u, cfg, sr);
}

}  // namespace

BesselResult bessel_j_scaled(cplx nu, double u, const PrecisionConfig& cfg) {
    validate(cfg);
    if (!std::isfinite(u) || u < 0.0) throw DomainError("bessel_j: u must be finite and >= 0");
    if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag())) {
        throw DomainError("bessel_j: order must be finite");
    }
    if (u == 0.0) {
        BesselResult r;
        r.strategy = Strategy::series;
        if (nu == cplx(0.0, 0.0)) {
            r.value = ScaledComplex::from(1.0);
        } else if (nu.real() > 0.0) {
            r.value = ScaledComplex{};
        } else {
            throw DomainError("bessel_j: J_nu(0) undefined for Re nu <= 0, nu != 0");
        }
        return r;
    }
    if (nu.imag() < 0.0) {
        BesselResult r = bessel_j_scaled(std::conj(nu), u, cfg);
        r.value = r.value.conj();
        return r;
    }
    const bool real_order = nu.imag() == 0.0;
    if (real_order && nu.real() < 0.0 && std::nearbyint(nu.real()) == nu.real()) {
        // J_{-n} = (-1)^n J_n
        BesselResult r = bessel_j_scaled(-nu, u, cfg);
        if (std::fmod(-nu.real(), 2.0) == 1.0) r.value.mant = -r.value.mant;
        return r;
    }
    BesselResult r = dispatch(nu, u, cfg);
    if (real_order) r.value.mant = cplx(r.value.mant.real(), 0.0);
    return r;
}

cplx bessel_j(cplx nu, double u, const PrecisionConfig& cfg) {
    return bessel_j_scaled(nu, u, cfg).value.value();
}

}  // namespace linnik::specfun
