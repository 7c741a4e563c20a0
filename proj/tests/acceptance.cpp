// Acceptance run: every criterion is evaluated at its stated tolerance and
// reported on one PASS/FAIL line. Exit status is nonzero if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linnik/arithmetic.hpp"
#include "linnik/error.hpp"
#include "linnik/formula.hpp"
#include "linnik/parallel.hpp"
#include "linnik/specfun.hpp"
#include "linnik/zeros.hpp"
#include "oracles.hpp"
#include "report.hpp"

using namespace linnik;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    o.detail.precision(6);
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d (%s):%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

// p if n = p^j, else 0
std::size_t prime_base(std::size_t n) {
    if (n < 2) return 0;
    std::size_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (n % p != 0) p = n;
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

const std::vector<std::size_t> kGrid{500, 1000, 2000, 4000};
constexpr double kOrder = 2.0;

}  // namespace

int main() {
    const zeros::ZeroSet zs = zeros::resolve_zeros("bundled");
    formula::TruncationSpec spec;
    spec.Z = 50;

    // shared by criteria 1, 2, 3 and 9
    const formula::ScalingStudy study = formula::scaling_study(kGrid, kOrder, zs, spec);
    const auto& reps = study.reports;

    report(1, "explicit-formula scaling", [&](Outcome& o) {
        double lo = INFINITY, hi = 0.0;
        for (const auto& r : reps) {
            lo = std::min(lo, std::fabs(r.normalized_residual));
            hi = std::max(hi, std::fabs(r.normalized_residual));
            o.detail << " N=" << r.params.n << ":" << r.normalized_residual;
        }
        o.require(study.slope.has_value(), "slope defined");
        if (study.slope) {
            o.detail << " slope=" << *study.slope;
            o.require(*study.slope <= kOrder + 1.0 + 0.2, "slope <= 3.2");
        }
        o.detail << " spread=" << hi / lo;
        o.require(hi / lo < 10.0, "normalized residual spread < 10");
    });

    report(2, "relative convergence to M1", [&](Outcome& o) {
        double prev = INFINITY;
        for (const auto& r : reps) {
            const double rel = std::fabs(r.lhs / r.m1 - 1.0);
            const double bound = 5.0 * std::pow(static_cast<double>(r.params.n), -0.25);
            o.detail << " N=" << r.params.n << ":" << rel;
            o.require(rel <= bound, "N=" + std::to_string(r.params.n) + " within 5 N^-1/4");
            o.require(rel < prev, "decreasing at N=" + std::to_string(r.params.n));
            prev = rel;
        }
    });

    report(3, "zero-term effectiveness", [&](Outcome& o) {
        std::vector<double> after_m1, after_m2, ns, a3, a4;
        for (const auto& r : reps) {
            after_m1.push_back(std::fabs(r.lhs - r.m1));
            after_m2.push_back(std::fabs(r.lhs - r.m1 - r.m2));
            ns.push_back(static_cast<double>(r.params.n));
            a3.push_back(std::fabs(r.m3));
            a4.push_back(std::fabs(r.m4));
        }
        const double r1 = rms(after_m1), r2 = rms(after_m2);
        o.detail << " rms|LHS-M1|=" << r1 << " rms|LHS-M1-M2|=" << r2;
        o.require(r2 <= r1 * (1.0 + 1e-12), "adding M2 does not raise the RMS");

        // one constant C for both terms, fitted on the grid as the largest
        // ratio; it must also cover an out-of-grid run at 2 max(N)
        const double e = kOrder / 2 + 1.1;
        double c = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) c = std::max({c, a3[i] / std::pow(ns[i], e), a4[i] / std::pow(ns[i], e)});
        const std::size_t n_out = 2 * kGrid.back();
        const auto extra = formula::evaluate({n_out, kOrder}, zs, spec);
        const double bound = c * std::pow(static_cast<double>(n_out), e);
        o.detail << " C=" << c << " N=" << n_out << ": |M3|/CN^e=" << std::fabs(extra.m3) / bound
                 << " |M4|/CN^e=" << std::fabs(extra.m4) / bound;
        o.require(std::fabs(extra.m3) <= bound, "|M3| <= C N^{k/2+1.1} out of grid");
        o.require(std::fabs(extra.m4) <= bound, "|M4| <= C N^{k/2+1.1} out of grid");
    });

    report(4, "brute-force oracle equivalence", [&](Outcome& o) {
        const auto lam = arith::sieve_von_mangoldt(500);
        const auto rq = arith::compute_rq(lam, 500);
        const auto exact = arith::compute_rq_exact(lam, 500);
        std::vector<std::map<std::size_t, std::size_t>> brute(501);
        for (std::size_t a = 2; a <= 500; ++a) {
            const std::size_t p = prime_base(a);
            if (!p) continue;
            for (std::size_t b = 1; a + b * b <= 500; ++b)
                for (std::size_t c = 1; a + b * b + c * c <= 500; ++c) ++brute[a + b * b + c * c][p];
        }
        std::size_t mismatches = 0;
        for (std::size_t n = 1; n <= 500; ++n) {
            std::map<std::size_t, std::size_t> got;
            for (auto [p, c] : exact[n]) got[p] = c;
            double want = 0.0;
            for (auto [p, c] : brute[n]) want += static_cast<double>(c) * std::log(static_cast<double>(p));
            if (got != brute[n] || std::fabs(rq[n] - want) > 1e-13 * std::max(1.0, want)) ++mismatches;
        }
        o.detail << " r_Q mismatches=" << mismatches;
        o.require(mismatches == 0, "r_Q exact for n <= 500");
        double worst = 0.0;
        for (const auto& c : oracle::cesaro) {
            worst = std::max(worst, std::fabs(arith::cesaro_lhs(rq, {c.n, c.k}).value - c.value) / std::fabs(c.value));
        }
        o.detail << " cesaro max rel err=" << worst;
        o.require(worst <= 1e-12, "cesaro within 1e-12");
    });

    report(5, "special-function accuracy", [&](Outcome& o) {
        double worst = 0.0;
        for (const auto& c : oracle::bessel_grid) {
            const auto r = specfun::bessel_j_scaled(c.nu, c.u);
            worst = std::max(worst, std::abs(r.value.value() - c.value) / std::abs(c.value));
        }
        o.detail << " bessel max rel err=" << worst;
        o.require(worst <= 1e-10, "bessel grid within 1e-10");

        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> re(1.0, 6.0), im(0.0, 240.0), lu(std::log(0.1), std::log(4000.0));
        double rec = 0.0;
        for (int i = 0; i < 300; ++i) {
            const cplx nu(re(rng), im(rng));
            const double u = std::exp(lu(rng));
            const auto a = specfun::bessel_j_scaled(nu - 1.0, u), b = specfun::bessel_j_scaled(nu, u),
                       c = specfun::bessel_j_scaled(nu + 1.0, u);
            const auto e = std::max({a.value.exp2, b.value.exp2, c.value.exp2});
            auto at = [&](const specfun::ScaledComplex& v) { return std::ldexp(1.0, static_cast<int>(v.exp2 - e)) * v.mant; };
            const cplx lhs = at(a.value) + at(c.value), rhs = 2.0 * nu / u * at(b.value);
            rec = std::max(rec, std::abs(lhs - rhs) / (std::abs(at(a.value)) + std::abs(at(c.value)) + std::abs(rhs)));
        }
        o.detail << " recurrence residual=" << rec;
        o.require(rec <= 1e-9, "recurrence within 1e-9");

        double lap = 0.0;
        for (cplx s : {cplx(0.75, 0.0), cplx(2.5, 3.0), cplx(4.0, -14.1347)}) {
            for (double n : {1.0, 10.0, 500.0}) {
                const cplx got = specfun::laplace_line_integral(s, n, 1.0 / n).value;
                const cplx want = std::exp((s - 1.0) * std::log(n) - specfun::log_gamma(s));
                lap = std::max(lap, std::abs(got - want) / std::abs(want));
            }
        }
        o.detail << " laplace rel err=" << lap;
        o.require(lap <= 1e-8, "laplace within 1e-8");
    });

    report(6, "modularity suite", [&](Outcome& o) {
        double fe = 0.0;
        for (double a : {0.02, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
            for (double y : {-5.0, 0.0, 0.5, 5.0}) {
                const cplx z(a, y), w = kPi * kPi / z;
                const cplx lhs = arith::theta3_auto({a, y}).value;
                const cplx rhs = std::sqrt(kPi / z) * arith::theta3_auto({w.real(), w.imag()}).value;
                fe = std::max(fe, std::abs(lhs - rhs) / std::abs(lhs));
            }
        }
        o.detail << " theta residual=" << fe;
        o.require(fe <= 1e-12, "theta functional equation within 1e-12");

        // sum_n r_Q(n) e^{-nz} = S~(z) omega2(z)^2 at a = 1/50
        const double a = 1.0 / 50.0;
        const std::size_t t = 6000;
        const auto lam = arith::sieve_von_mangoldt(200000);
        const auto rq = arith::compute_rq(lam, t);
        const std::size_t sc = arith::s_tilde_cutoff(a / 2, 1e-12);
        const double half = arith::s_tilde(lam, {a / 2, 0.0}, sc).value.real() * std::pow(arith::omega2_real(a / 2), 2);
        const double lhs_tail = std::exp(-a * static_cast<double>(t) / 2) * half;
        double worst = 0.0;
        for (double y : {0.0, 0.1, 1.0, 3.0}) {
            cplx lhs = 0.0;
            for (std::size_t n = t; n >= 1; --n) lhs += rq[n] * std::exp(-static_cast<double>(n) * cplx(a, y));
            const auto s = arith::s_tilde(lam, {a, y}, arith::s_tilde_cutoff(a, 1e-10));
            const auto w = arith::omega2_auto({a, y});
            const cplx rhs = s.value * w.value * w.value;
            const double wa = std::abs(w.value);
            const double bound = lhs_tail + s.tail_bound * std::pow(wa + w.tail_bound, 2) +
                                 std::abs(s.value) * (2 * wa * w.tail_bound + w.tail_bound * w.tail_bound) +
                                 1e-12 * half;
            worst = std::max(worst, std::abs(lhs - rhs) / bound);
        }
        o.detail << " generating identity |diff|/bound=" << worst;
        o.require(worst <= 1.0, "generating identity within combined tail bounds");
    });

    report(7, "S~ explicit-formula shape", [&](Outcome& o) {
        const double a = 1.0 / 100.0;
        const auto lam = arith::sieve_von_mangoldt(20000);
        const std::size_t sc = arith::s_tilde_cutoff(a, 1e-12);
        std::vector<double> consts;
        for (double y : {0.0, 0.05}) {
            const cplx z(a, y), log_z = std::log(z);
            const auto f = [&](cplx rho) { return std::exp(-rho * log_z + specfun::log_gamma(rho)); };
            const cplx zero_sum = zeros::conjugate_pair_sum(f, zs, 50);
            const cplx resid = arith::s_tilde(lam, {a, y}, sc).value - (1.0 / z - zero_sum);
            // at y = 0 the logarithm is taken at |y| = a
            const double lg = std::log(std::max(std::fabs(y), a) / a);
            const double shape = std::sqrt(std::abs(z)) * (1.0 + lg * lg);
            consts.push_back(std::abs(resid) / shape);
            o.detail << " y=" << y << ": |E|=" << std::abs(resid) << " C=" << consts.back();
        }
        const double ratio = *std::max_element(consts.begin(), consts.end()) / *std::min_element(consts.begin(), consts.end());
        o.detail << " C ratio=" << ratio;
        o.require(ratio <= 3.0, "fitted C stable within a factor 3");
    });

    report(8, "lattice probe threshold (d = 2, N = 1000)", [&](Outcome& o) {
        const auto first50 = zs.prefix(50);
        for (double k : {1.75, 1.0}) {
            const auto p = formula::lattice_probe(2, k, 1000.0, first50);
            const double ratio = p.partial_sums[49] / p.partial_sums[24];
            o.detail << " k=" << k << ": partial[50]/partial[25]=" << ratio;
            if (k > 1.5) {
                o.require(ratio < 1.1, "plateau at k = 1.75");
            } else {
                o.require(ratio > 1.5, "growth at k = 1");
            }
        }
    });

    report(9, "truncation containment", [&](Outcome& o) {
        for (const auto& r : reps) {
            const auto& s = r.spec;
            const arith::CesaroParams p = r.params;
            auto check = [&](const char* what, double base, double doubled, double bound) {
                const double change = std::fabs(doubled - base);
                if (!(change < bound)) {
                    o.require(false, std::string(what) + " at N=" + std::to_string(p.n));
                    o.detail << " (" << change << " vs " << bound << ")";
                }
            };
            formula::ResolvedSpec dz = s, dl = s, dm = s;
            dz.Z = 2 * s.Z;
            dl.L = 2 * s.L;
            dm.M = 2 * s.M;
            check("M2 dZ", r.m2, formula::m2_term(p, zs, dz).value, r.t2.zero_tail);
            check("M3 dZ", r.m3, formula::m3_term(p, zs, dz).value, r.t3.zero_tail);
            check("M4 dZ", r.m4, formula::m4_term(p, zs, dz).value, r.t4.zero_tail);
            check("M3 dL", r.m3, formula::m3_term(p, zs, dl).value, r.t3.cutoff_tail);
            check("M4 dM", r.m4, formula::m4_term(p, zs, dm).value, r.t4.cutoff_tail);
            o.detail << " N=" << p.n << "(L=" << s.L << ",M=" << s.M << ")";
        }
    });

    report(10, "determinism", [&](Outcome& o) {
        auto serialize = [&](unsigned threads) {
            parallel::set_thread_count(threads);
            const auto st = formula::scaling_study({500, 1000, 2000}, 2.5, zs, spec);
            std::vector<cli::ReportRow> rows;
            for (const auto& r : st.reports) rows.push_back(cli::to_row(r, st.slope));
            std::ostringstream csv, json;
            cli::write_csv(csv, rows);
            cli::write_json(json, rows);
            const auto pr = formula::lattice_probe(2, 1.75, 300.0, zs.prefix(20));
            std::ostringstream probe;
            cli::write_probe_csv(probe, pr, zs.prefix(20));
            return csv.str() + json.str() + probe.str();
        };
        const unsigned saved = parallel::thread_count();
        const std::string a = serialize(1), b = serialize(4), c = serialize(4), d = serialize(13);
        parallel::set_thread_count(saved);
        o.detail << " output bytes=" << a.size();
        o.require(a == b && b == c && c == d, "identical serialized output across reruns and thread counts");
        o.require(same_bits(reps[0].total, ((reps[0].m1 + reps[0].m2) + reps[0].m3) + reps[0].m4), "fixed total order");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
