#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "linnik/error.hpp"
#include "linnik/formula.hpp"
#include "linnik/parallel.hpp"
#include "linnik/summation.hpp"

namespace linnik::formula {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogPi = std::log(kPi);

double lgamma_real(double x) { return specfun::log_gamma(cplx(x, 0.0)).real(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One Bessel block of M3 or M4:
//   sign * e^{log_coef} * sum_p mult J_nu(u_p) l_p^{-nu/2},            (no zeros)
//   sign * e^{log_coef} * P[ Gamma(rho) pi^{-rho} N^{nexp rho} sum_p mult J_{shift+rho}(u_p) l_p^{-(shift+rho)/2} ]
// with u_p = 2 pi sqrt(l_p N) and P the paired zero sum.
struct Block {
    double sign = 1.0;
    double log_coef = 0.0;
    double shift = 0.0;
    bool zeros = false;
    double nexp = 0.5;
};

cplx point_sum(cplx nu, cplx log_pref, double n, const PointSet& ps,
               const specfun::PrecisionConfig& cfg) {
    const auto acc = parallel::chunked_sum<CompensatedComplexSum>(ps.points.size(), [&](std::size_t i) {
        const auto [l, mult] = ps.points[i];
        const double u = 2.0 * kPi * std::sqrt(static_cast<double>(l) * n);
        specfun::BesselResult r;
        try {
            r = specfun::bessel_j_scaled(nu, u, cfg);
        } catch (const PrecisionError& e) {
            std::ostringstream os;
            os.precision(17);
            os << "J_nu(u) at nu = " << nu.real() << (nu.imag() < 0 ? "-" : "+")
               << std::fabs(nu.imag()) << "i, u = " << u << " (l = " << l << ")";
            throw PrecisionError(os.str(), e.strategy(), e.achieved());
        }
        const cplx lw = log_pref - 0.5 * nu * std::log(static_cast<double>(l));
        return (r.value * specfun::ScaledComplex::from_log(lw)).value() * static_cast<double>(mult);
    });
    return acc.value();
}

double block_value(const Block& b, const CesaroParams& p, const ZeroSet& zs, std::size_t z,
                   const PointSet& ps, const specfun::PrecisionConfig& cfg) {
    const double n = static_cast<double>(p.n);
    if (!b.zeros) {
        return b.sign * point_sum(cplx(b.shift, 0.0), b.log_coef, n, ps, cfg).real();
    }
    const double log_n = std::log(n);
    const auto f = [&](cplx rho) {
        const cplx lp = b.log_coef + specfun::log_gamma(rho) - rho * kLogPi + b.nexp * rho * log_n;
        return point_sum(b.shift + rho, lp, n, ps, cfg);
    };
    return b.sign * zeros::paired_zero_sum(f, zs, z);
}

// log of the modulus of the per-zero prefactor times the Bessel majorant, in
// the form used by the zero tails (without the lattice sum).
double log_zero_weight(const Block& b, cplx rho, double log_n) {
    return b.log_coef + specfun::log_gamma(rho).real() - rho.real() * kLogPi +
           b.nexp * rho.real() * log_n;
}

// Cutoff tail of one block: points with l >= x dropped.
double block_cutoff_tail(const Block& b, const CesaroParams& p, const ZeroSet& zs, std::size_t z,
                         Geometry g, double x) {
    const double n = static_cast<double>(p.n);
    if (!b.zeros) return 2.0 * std::exp(b.log_coef + log_bessel_tail(g, cplx(b.shift, 0.0), n, x));
    const double log_n = std::log(n);
    CompensatedSum acc;
    for (std::size_t j = 0; j < z; ++j) {
        const cplx rho = zs[j].rho();
        acc += std::exp(log_zero_weight(b, rho, log_n) + log_bessel_tail(g, b.shift + rho, n, x));
    }
    // both members of each pair, safety factor 2
    return 4.0 * acc.value();
}

// Zeros past the table: the per-zero bound at ordinate gamma, integrated
// against the density log(gamma / 2 pi) / 2 pi from t0 on.
double beyond_table(const Block& b, const CesaroParams& p, Geometry g, double beta, double t0) {
    const double n = static_cast<double>(p.n);
    const double log_n = std::log(n);
    auto h = [&](double gamma) {
        const cplx rho(beta, gamma);
        const double dens = std::log(gamma / (2.0 * kPi)) / (2.0 * kPi);
        return std::exp(log_zero_weight(b, rho, log_n) + log_bessel_tail(g, b.shift + rho, n, 0.0)) *
               std::max(dens, 0.0);
    };
    constexpr double ratio = 1.02;
    const double t_end = t0 * 1e4;
    CompensatedSum acc;
    double g0 = t0, h0 = h(t0), h_prev = h0, g_prev = g0;
    while (g0 < t_end) {
        const double g1 = g0 * ratio;
        const double h1 = h(g1);
        acc += std::max(h0, h1) * (g1 - g0);
        g_prev = g0;
        h_prev = h0;
        g0 = g1;
        h0 = h1;
    }
    // power-law continuation with the local exponent at the end of the grid
    if (h0 == 0.0) return acc.value();
    const double m = std::log(h_prev / h0) / std::log(g0 / g_prev);
    if (!(m > 1.05)) return kInf;
    acc += h0 * g0 / (m - 1.0);
    return acc.value();
}

double block_zero_tail(const Block& b, const CesaroParams& p, const ZeroSet& zs, std::size_t z,
                       Geometry g) {
    if (!b.zeros) return 0.0;
    const double n = static_cast<double>(p.n);
    const double log_n = std::log(n);
    CompensatedSum acc;
    double beta_max = 0.5;
    for (const auto& zz : zs.zeros) beta_max = std::max(beta_max, zz.beta);
    for (std::size_t j = z; j < zs.count(); ++j) {
        const cplx rho = zs[j].rho();
        acc += std::exp(log_zero_weight(b, rho, log_n) + log_bessel_tail(g, b.shift + rho, n, 0.0));
    }
    const double t0 = zs.count() > 0 ? zs.zeros.back().gamma : 14.0;
    acc += beyond_table(b, p, g, beta_max, t0);
    return 4.0 * acc.value();
}

std::vector<Block> m3_blocks(const CesaroParams& p) {
    const double k = p.k, log_n = std::log(static_cast<double>(p.n));
    return {
        {+1.0, (k / 2 + 1) * log_n - (k + 1) * kLogPi, k + 2, false, 0.0},
        {-1.0, (k / 2 + 0.5) * log_n - k * kLogPi, k + 1, true, 0.5},
    };
}

std::vector<Block> m4_blocks(const CesaroParams& p) {
    const double k = p.k, log_n = std::log(static_cast<double>(p.n));
    return {
        {+1.0, (k / 2 + 1) * log_n - (k + 1) * kLogPi, k + 2, false, 0.0},
        {-1.0, (k / 2 + 0.75) * log_n - (k + 1) * kLogPi, k + 1.5, false, 0.0},
        {-1.0, (k / 2 + 0.5) * log_n - k * kLogPi, k + 1, true, 0.5},
        {+1.0, (k / 2 + 0.25) * log_n - k * kLogPi, k + 0.5, true, 0.5},
    };
}

void require_zeros(const ZeroSet& zs, std::size_t z) {
    if (z > zs.count()) {
        throw RangeError("Z = " + std::to_string(z) + " exceeds the " + std::to_string(zs.count()) +
                         " loaded zeros");
    }
}

TermResult bessel_term(const std::vector<Block>& blocks, const CesaroParams& p, const ZeroSet& zs,
                       const ResolvedSpec& s, const PointSet& ps, double cut_x) {
    const auto t0 = std::chrono::steady_clock::now();
    require_zeros(zs, s.Z);
    TermResult out;
    CompensatedSum total;
    for (const Block& b : blocks) {
        const double v = ps.points.empty() ? 0.0 : block_value(b, p, zs, s.Z, ps, s.bessel);
        out.blocks.push_back(v);
        total += v;
        out.cutoff_tail += block_cutoff_tail(b, p, zs, s.Z, ps.geometry, cut_x);
        out.zero_tail += block_zero_tail(b, p, zs, s.Z, ps.geometry);
    }
    out.value = total.value();
    out.seconds = seconds_since(t0);
    return out;
}

}  // namespace

void validate(const TruncationSpec& spec) {
    if (spec.tol && !(*spec.tol > 0.0 && std::isfinite(*spec.tol))) {
        throw PreconditionError("TruncationSpec.tol must be positive and finite");
    }
    specfun::validate(spec.bessel);
}

double default_tolerance(const CesaroParams& p) {
    return 1e-6 * std::exp((p.k + 1.0) * std::log(static_cast<double>(p.n)));
}

TermResult m1_term(const CesaroParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    arith::validate(p);
    if (!(p.k > -1.0)) throw DomainError("m1_term: k must be > -1");
    const double k = p.k, log_n = std::log(static_cast<double>(p.n));
    TermResult out;
    out.blocks = {
        kPi / 4.0 * std::exp((k + 2) * log_n - lgamma_real(k + 3)),
        0.25 * std::exp((k + 1) * log_n - lgamma_real(k + 2)),
        -std::sqrt(kPi) / 2.0 * std::exp((k + 1.5) * log_n - lgamma_real(k + 2.5)),
    };
    CompensatedSum acc;
    for (double b : out.blocks) acc += b;
    out.value = acc.value();
    out.seconds = seconds_since(t0);
    return out;
}

TermResult m2_term(const CesaroParams& p, const ZeroSet& zs, const ResolvedSpec& s) {
    const auto t0 = std::chrono::steady_clock::now();
    arith::validate(p);
    require_zeros(zs, s.Z);
    const double k = p.k, n = static_cast<double>(p.n), log_n = std::log(n);
    TermResult out;
    if (!(k > 0.5)) out.warnings.push_back("m2: k <= 1/2, outside the convergence range");

    struct Piece {
        double coef, offset, power;
    };
    const Piece pieces[] = {
        {-kPi / 4.0, k + 2.0, k + 1.0},
        {-0.25, k + 1.0, k},
        {std::sqrt(kPi) / 2.0, k + 1.5, k + 0.5},
    };
    CompensatedSum total;
    for (const Piece& pc : pieces) {
        const auto f = [&](cplx rho) {
            return std::exp(specfun::log_gamma_ratio(rho, pc.offset) + (pc.power + rho) * log_n);
        };
        const double v = pc.coef * zeros::paired_zero_sum(f, zs, s.Z);
        out.blocks.push_back(v);
        total += v;
        out.zero_tail += std::fabs(pc.coef) * zeros::zero_tail_bound(k, n, pc.offset - k, s.Z, zs);
    }
    out.value = total.value();
    out.seconds = seconds_since(t0);
    return out;
}

TermResult m3_term(const CesaroParams& p, const ZeroSet& zs, const ResolvedSpec& s) {
    arith::validate(p);
    TermResult out = bessel_term(m3_blocks(p), p, zs, s, plane_points(s.L),
                                 static_cast<double>(s.L) * static_cast<double>(s.L) + 1.0);
    if (!(p.k > 1.5)) out.warnings.push_back("m3: k <= 3/2, outside the convergence range");
    return out;
}

TermResult m4_term(const CesaroParams& p, const ZeroSet& zs, const ResolvedSpec& s) {
    arith::validate(p);
    const double next = static_cast<double>(s.M) + 1.0;
    TermResult out = bessel_term(m4_blocks(p), p, zs, s, line_points(s.M), next * next);
    if (!(p.k > 1.0)) out.warnings.push_back("m4: k <= 1, outside the convergence range");
    return out;
}

double m4_block4_variant(const CesaroParams& p, const ZeroSet& zs, const ResolvedSpec& s) {
    arith::validate(p);
    require_zeros(zs, s.Z);
    Block b = m4_blocks(p)[3];
    b.nexp = 1.0;
    const PointSet ps = line_points(s.M);
    return ps.points.empty() ? 0.0 : block_value(b, p, zs, s.Z, ps, s.bessel);
}

double m3_lattice_tail(const CesaroParams& p, const ZeroSet& zs, std::size_t z, std::size_t radius) {
    require_zeros(zs, z);
    const double x = static_cast<double>(radius) * static_cast<double>(radius) + 1.0;
    double out = 0.0;
    for (const Block& b : m3_blocks(p)) out += block_cutoff_tail(b, p, zs, z, Geometry::plane, x);
    return out;
}

double m4_theta_tail(const CesaroParams& p, const ZeroSet& zs, std::size_t z, std::size_t count) {
    require_zeros(zs, z);
    const double next = static_cast<double>(count) + 1.0;
    double out = 0.0;
    for (const Block& b : m4_blocks(p)) out += block_cutoff_tail(b, p, zs, z, Geometry::line, next * next);
    return out;
}

namespace {

template <class Tail>
std::size_t smallest_cutoff(Tail&& tail, double tol, const char* name) {
    constexpr std::size_t cap = std::size_t{1} << 16;
    std::size_t hi = 1;
    while (tail(hi) > tol) {
        if (hi >= cap) {
            throw TruncationError(std::string("no ") + name + " <= " + std::to_string(cap) +
                                  " meets the tolerance");
        }
        hi *= 2;
    }
    std::size_t lo = hi / 2;  // tail(lo) > tol or lo == 0
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (tail(mid) > tol ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

ResolvedSpec resolve(const TruncationSpec& spec, const CesaroParams& p, const ZeroSet& zs) {
    validate(spec);
    arith::validate(p);
    require_zeros(zs, spec.Z);
    ResolvedSpec r;
    r.Z = spec.Z;
    r.tol = spec.tol.value_or(default_tolerance(p));
    r.bessel = spec.bessel;
    r.L = spec.L ? *spec.L
                 : smallest_cutoff([&](std::size_t l) { return m3_lattice_tail(p, zs, r.Z, l); },
                                   r.tol, "lattice radius L");
    r.M = spec.M ? *spec.M
                 : smallest_cutoff([&](std::size_t m) { return m4_theta_tail(p, zs, r.Z, m); },
                                   r.tol, "cutoff M");
    return r;
}

}  // namespace linnik::formula
