// MPFR kernels for J_nu(u). Only the hot loops run in extended precision; the
// prefactors are assembled by the caller in log space.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linnik/error.hpp"
#include "linnik/specfun.hpp"

namespace linnik::specfun::detail {

namespace {

class Mp {
public:
    explicit Mp(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    ~Mp() { mpfr_clear(x_); }
    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    operator mpfr_ptr() { return x_; }

private:
    mpfr_t x_;
};

struct MpComplex {
    Mp re;
    Mp im;
    explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
    void set(double r, double i) {
        mpfr_set_d(re, r, MPFR_RNDN);
        mpfr_set_d(im, i, MPFR_RNDN);
    }
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log2|x| within one unit; -inf for zero.
double approx_log2(const Mp& x) {
    if (mpfr_zero_p(x.get())) return kNegInf;
    return static_cast<double>(mpfr_get_exp(x.get()));
}

double approx_log2(const MpComplex& z) { return std::max(approx_log2(z.re), approx_log2(z.im)); }

ScaledComplex to_scaled(const MpComplex& z) {
    long er = 0, ei = 0;
    const double mr = mpfr_get_d_2exp(&er, z.re.get(), MPFR_RNDN);
    const double mi = mpfr_get_d_2exp(&ei, z.im.get(), MPFR_RNDN);
    if (mr == 0.0 && mi == 0.0) return {};
    long e = 0;
    if (mr == 0.0) {
        e = ei;
    } else if (mi == 0.0) {
        e = er;
    } else {
        e = std::max(er, ei);
    }
    ScaledComplex out;
    out.mant = cplx(mr == 0.0 ? 0.0 : std::ldexp(mr, static_cast<int>(er - e)),
                    mi == 0.0 ? 0.0 : std::ldexp(mi, static_cast<int>(ei - e)));
    out.exp2 = e;
    return out.normalize();
}

double log2_abs(const MpComplex& z) {
    const ScaledComplex s = to_scaled(z);
    if (s.is_zero()) return kNegInf;
    return std::log2(std::abs(s.mant)) + static_cast<double>(s.exp2);
}

constexpr std::size_t kMaxTerms = 2'000'000;

}  // namespace

MpSeriesResult mp_series(cplx nu, double u, int bits, double tol) {
    const mpfr_prec_t prec = bits;
    const double stop_bits = -std::log2(tol) + 12.0;
    const double q_d = 0.25 * u * u;

    Mp q(std::max<mpfr_prec_t>(prec, 128));
    mpfr_set_d(q, u, MPFR_RNDN);
    mpfr_sqr(q, q, MPFR_RNDN);
    mpfr_div_2ui(q, q, 2, MPFR_RNDN);

    MpComplex t(prec), s(prec);
    t.set(1.0, 0.0);
    s.set(1.0, 0.0);
    Mp dr(prec), di(prec), norm(prec), a(prec), b(prec), tmp(prec);
    mpfr_set_d(di, nu.imag(), MPFR_RNDN);

    MpSeriesResult out;
    out.log2_max_term = 0.0;
    std::size_t m = 1;
    for (;; ++m) {
        if (m > kMaxTerms) throw PrecisionError("bessel series did not terminate", "series", 1.0);
        // t *= -q / (m (nu + m))
        mpfr_mul(t.re, t.re, q, MPFR_RNDN);
        mpfr_mul(t.im, t.im, q, MPFR_RNDN);
        mpfr_div_ui(t.re, t.re, static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_div_ui(t.im, t.im, static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_set_d(dr, nu.real(), MPFR_RNDN);
        mpfr_add_ui(dr, dr, static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_sqr(norm, dr, MPFR_RNDN);
        mpfr_sqr(tmp, di, MPFR_RNDN);
        mpfr_add(norm, norm, tmp, MPFR_RNDN);
        // (tr + i ti)(dr - i di) = (tr dr + ti di) + i (ti dr - tr di)
        mpfr_mul(a, t.re, dr, MPFR_RNDN);
        mpfr_mul(tmp, t.im, di, MPFR_RNDN);
        mpfr_add(a, a, tmp, MPFR_RNDN);
        mpfr_mul(b, t.im, dr, MPFR_RNDN);
        mpfr_mul(tmp, t.re, di, MPFR_RNDN);
        mpfr_sub(b, b, tmp, MPFR_RNDN);
        mpfr_div(t.re, a, norm, MPFR_RNDN);
        mpfr_div(t.im, b, norm, MPFR_RNDN);
        mpfr_neg(t.re, t.re, MPFR_RNDN);
        mpfr_neg(t.im, t.im, MPFR_RNDN);

        mpfr_add(s.re, s.re, t.re, MPFR_RNDN);
        mpfr_add(s.im, s.im, t.im, MPFR_RNDN);

        const double lt = approx_log2(t);
        out.log2_max_term = std::max(out.log2_max_term, lt);
        const double md = static_cast<double>(m);
        const bool decreasing = md * std::abs(nu + md) > q_d;
        if (decreasing && lt < approx_log2(s) - stop_bits) break;
    }
    out.terms = m;
    out.sum = to_scaled(s);
    return out;
}

MpHankelResult mp_hankel(cplx nu, double u, int bits, double tol) {
    const mpfr_prec_t prec = bits;
    const double stop_bits = -std::log2(tol) + 12.0;

    // 4 nu^2, exact enough at prec >= 106
    Mp fr(prec), fi(prec), nr(prec), ni(prec), tmp(prec), tmp2(prec), den(prec);
    mpfr_set_d(nr, nu.real(), MPFR_RNDN);
    mpfr_set_d(ni, nu.imag(), MPFR_RNDN);
    Mp nu2r(prec), nu2i(prec);
    mpfr_sqr(nu2r, nr, MPFR_RNDN);
    mpfr_sqr(tmp, ni, MPFR_RNDN);
    mpfr_sub(nu2r, nu2r, tmp, MPFR_RNDN);
    mpfr_mul_2ui(nu2r, nu2r, 2, MPFR_RNDN);
    mpfr_mul(nu2i, nr, ni, MPFR_RNDN);
    mpfr_mul_2ui(nu2i, nu2i, 3, MPFR_RNDN);

    MpComplex a(prec), p(prec), qs(prec);
    a.set(1.0, 0.0);
    p.set(1.0, 0.0);
    qs.set(0.0, 0.0);

    MpHankelResult out;
    double log2_max = 0.0;
    double prev = 0.0;
    bool converged = false;
    double last = 0.0;
    const std::size_t cap = static_cast<std::size_t>(4.0 * u + 4.0 * std::abs(nu) + 64.0);
    for (std::size_t j = 1; j <= cap; ++j) {
        // a_j = a_{j-1} (4 nu^2 - (2j-1)^2) / (8 j u)
        const double odd = static_cast<double>(2 * j - 1);
        mpfr_set_d(tmp, odd, MPFR_RNDN);
        mpfr_sqr(tmp, tmp, MPFR_RNDN);
        mpfr_sub(fr, nu2r, tmp, MPFR_RNDN);
        mpfr_set(fi.get(), nu2i.get(), MPFR_RNDN);
        mpfr_mul(tmp, a.re, fr, MPFR_RNDN);
        mpfr_mul(tmp2, a.im, fi, MPFR_RNDN);
        mpfr_sub(tmp, tmp, tmp2, MPFR_RNDN);
        mpfr_mul(tmp2, a.re, fi, MPFR_RNDN);
        mpfr_mul(a.im, a.im, fr, MPFR_RNDN);
        mpfr_add(a.im, a.im, tmp2, MPFR_RNDN);
        mpfr_set(a.re.get(), tmp.get(), MPFR_RNDN);
        mpfr_set_d(den, u, MPFR_RNDN);
        mpfr_mul_ui(den, den, static_cast<unsigned long>(8 * j), MPFR_RNDN);
        mpfr_div(a.re, a.re, den, MPFR_RNDN);
        mpfr_div(a.im, a.im, den, MPFR_RNDN);

        const double la = approx_log2(a);
        const double ratio =
            std::abs(4.0 * nu * nu - odd * odd) / (8.0 * static_cast<double>(j) * u);
        if (odd > 2.0 * std::abs(nu) && ratio >= 1.0) {
            // Past the smallest term: the expansion diverges from here on.
            last = prev;
            break;
        }
        prev = la;
        log2_max = std::max(log2_max, la);

        // P = sum (-1)^i a_{2i}, Q = sum (-1)^i a_{2i+1}
        const bool neg = ((j / 2) % 2) == 1;
        MpComplex& dst = (j % 2 == 0) ? p : qs;
        if (neg) {
            mpfr_sub(dst.re, dst.re, a.re, MPFR_RNDN);
            mpfr_sub(dst.im, dst.im, a.im, MPFR_RNDN);
        } else {
            mpfr_add(dst.re, dst.re, a.re, MPFR_RNDN);
            mpfr_add(dst.im, dst.im, a.im, MPFR_RNDN);
        }
        if (la < -stop_bits) {
            converged = true;
            last = la;
            break;
        }
        last = la;
    }

    // chi = u - nu pi / 2 - pi / 4
    Mp pi(prec), cr(prec), ci(prec);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_mul(cr, nr, pi, MPFR_RNDN);
    mpfr_div_2ui(cr, cr, 1, MPFR_RNDN);
    mpfr_div_2ui(tmp, pi, 2, MPFR_RNDN);
    mpfr_add(cr, cr, tmp, MPFR_RNDN);
    mpfr_set_d(tmp, u, MPFR_RNDN);
    mpfr_sub(cr, tmp, cr, MPFR_RNDN);
    mpfr_mul(ci, ni, pi, MPFR_RNDN);
    mpfr_div_2ui(ci, ci, 1, MPFR_RNDN);
    mpfr_neg(ci, ci, MPFR_RNDN);

    Mp sr(prec), cosr(prec), sh(prec), ch(prec);
    mpfr_sin_cos(sr, cosr, cr, MPFR_RNDN);
    mpfr_sinh_cosh(sh, ch, ci, MPFR_RNDN);
    MpComplex cosc(prec), sinc(prec);
    mpfr_mul(cosc.re, cosr, ch, MPFR_RNDN);
    mpfr_mul(cosc.im, sr, sh, MPFR_RNDN);
    mpfr_neg(cosc.im, cosc.im, MPFR_RNDN);
    mpfr_mul(sinc.re, sr, ch, MPFR_RNDN);
    mpfr_mul(sinc.im, cosr, sh, MPFR_RNDN);

    // P cos chi and Q sin chi
    auto cmul = [&](MpComplex& dst, const MpComplex& x, const MpComplex& y) {
        mpfr_mul(tmp, x.re.get(), y.re.get(), MPFR_RNDN);
        mpfr_mul(tmp2, x.im.get(), y.im.get(), MPFR_RNDN);
        mpfr_sub(dst.re, tmp, tmp2, MPFR_RNDN);
        mpfr_mul(tmp, x.re.get(), y.im.get(), MPFR_RNDN);
        mpfr_mul(tmp2, x.im.get(), y.re.get(), MPFR_RNDN);
        mpfr_add(dst.im, tmp, tmp2, MPFR_RNDN);
    };
    MpComplex pc(prec), qsn(prec), res(prec);
    cmul(pc, p, cosc);
    cmul(qsn, qs, sinc);
    mpfr_sub(res.re, pc.re, qsn.re, MPFR_RNDN);
    mpfr_sub(res.im, pc.im, qsn.im, MPFR_RNDN);

    const double l_pc = log2_abs(pc);
    const double l_qs = log2_abs(qsn);
    const double l_res = log2_abs(res);
    const double l_parts = std::max(l_pc, l_qs);
    const double l_cs = std::max(log2_abs(cosc), log2_abs(sinc));
    out.log2_loss = std::max(0.0, l_parts - l_res) + log2_max;
    out.rel_truncation = std::exp2(last + l_cs - l_res);
    out.converged = converged;

    out.value = to_scaled(res) * cplx(std::sqrt(2.0 / (std::numbers::pi * u)), 0.0);
    return out;
}

}  // namespace linnik::specfun::detail
