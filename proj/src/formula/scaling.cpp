#include <algorithm>
#include <cmath>

#include "linnik/error.hpp"
#include "linnik/formula.hpp"
#include "linnik/summation.hpp"

namespace linnik::formula {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw SizeError("loglog_slope: x and y differ in length");
    if (x.size() < 2) throw SizeError("loglog_slope: need at least two points");
    const double m = static_cast<double>(x.size());
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope: values must be > 0");
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double mx = sx.value() / m, my = sy.value() / m;
    CompensatedSum sxy, sxx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (!(sxx.value() > 0.0)) throw DomainError("loglog_slope: x values are all equal");
    return sxy.value() / sxx.value();
}

ScalingStudy scaling_study(const std::vector<std::size_t>& n_list, double k, const ZeroSet& zs,
                           const TruncationSpec& spec, const EvaluateOptions& opts) {
    if (n_list.size() < 3) throw SizeError("scaling_study: need at least 3 values of N");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (!(n_list[i] > n_list[i - 1])) throw PreconditionError("scaling_study: N list must be strictly ascending");
    }
    arith::validate(CesaroParams{n_list.front(), k});

    const auto lambda = arith::sieve_von_mangoldt(n_list.back());
    const auto rq = arith::compute_rq(lambda, n_list.back());

    ScalingStudy out;
    out.k = k;
    std::vector<double> xs, ys;
    for (std::size_t n : n_list) {
        FormulaReport rep = evaluate(CesaroParams{n, k}, rq, zs, spec, opts);
        out.rows.push_back({n, rep.lhs, rep.m1, rep.m2, rep.m3, rep.m4, rep.residual,
                            rep.normalized_residual});
        if (rep.residual == 0.0) {
            out.notes.push_back("N = " + std::to_string(n) + ": zero residual excluded from the fit");
        } else {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::fabs(rep.residual));
        }
        out.reports.push_back(std::move(rep));
    }
    if (xs.size() >= 2) {
        out.slope = loglog_slope(xs, ys);
    } else {
        out.notes.push_back("fewer than two nonzero residuals: slope not fitted");
    }
    return out;
}

}  // namespace linnik::formula
