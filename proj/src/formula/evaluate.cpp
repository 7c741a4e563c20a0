#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>

#include "linnik/error.hpp"
#include "linnik/formula.hpp"
#include "linnik/parallel.hpp"

namespace linnik::formula {

namespace {

TermResult run_term(const char* name, const std::function<TermResult()>& f) {
    try {
        return f();
    } catch (const TermError&) {
        throw;
    } catch (const Error& e) {
        throw TermError(name, e.what());
    }
}

}  // namespace

FormulaReport evaluate(const CesaroParams& params, const arith::LinnikTable& rq, const ZeroSet& zs,
                       const TruncationSpec& spec, const EvaluateOptions& opts) {
    arith::validate(params);
    if (!(params.k > 1.5) && !opts.allow_subcritical) {
        std::ostringstream os;
        os << "k = " << params.k
           << " is outside the theorem range k > 3/2; pass the subcritical flag to compute anyway";
        throw TheoremRangeError(os.str());
    }
    if (rq.limit < params.n) throw SizeError("evaluate: r_Q table shorter than N");

    FormulaReport rep;
    rep.params = params;
    rep.spec = resolve(spec, params, zs);
    if (!(params.k > 1.5)) rep.warnings.push_back("k <= 3/2: outside the theorem range");

    const auto t0 = std::chrono::steady_clock::now();
    rep.lhs = arith::cesaro_lhs(rq, params).value;
    rep.wallclock.lhs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const ResolvedSpec& rs = rep.spec;
    auto f2 = [&] { return m2_term(params, zs, rs); };
    auto f3 = [&] { return m3_term(params, zs, rs); };
    auto f4 = [&] { return m4_term(params, zs, rs); };

    const TermResult t1 = run_term("m1", [&] { return m1_term(params); });
    if (parallel::thread_count() > 1) {
        auto a2 = std::async(std::launch::async, run_term, "m2", f2);
        auto a3 = std::async(std::launch::async, run_term, "m3", f3);
        auto a4 = std::async(std::launch::async, run_term, "m4", f4);
        // join all before rethrowing so no task outlives the inputs
        a2.wait();
        a3.wait();
        a4.wait();
        rep.t2 = a2.get();
        rep.t3 = a3.get();
        rep.t4 = a4.get();
    } else {
        rep.t2 = run_term("m2", f2);
        rep.t3 = run_term("m3", f3);
        rep.t4 = run_term("m4", f4);
    }

    rep.m1 = t1.value;
    rep.m2 = rep.t2.value;
    rep.m3 = rep.t3.value;
    rep.m4 = rep.t4.value;
    rep.tail_m2 = rep.t2.tail_bound();
    rep.tail_m3 = rep.t3.tail_bound();
    rep.tail_m4 = rep.t4.tail_bound();
    rep.wallclock.m1 = t1.seconds;
    rep.wallclock.m2 = rep.t2.seconds;
    rep.wallclock.m3 = rep.t3.seconds;
    rep.wallclock.m4 = rep.t4.seconds;
    for (const auto& w : {t1.warnings, rep.t2.warnings, rep.t3.warnings, rep.t4.warnings}) {
        rep.warnings.insert(rep.warnings.end(), w.begin(), w.end());
    }

    // fixed association order: ((m1 + m2) + m3) + m4
    rep.total = ((rep.m1 + rep.m2) + rep.m3) + rep.m4;
    rep.residual = rep.lhs - rep.total;
    rep.normalized_residual =
        rep.residual / std::exp((params.k + 1.0) * std::log(static_cast<double>(params.n)));

    if (opts.mode == Mode::diagnostic) {
        rep.m4_block4_variant = m4_block4_variant(params, zs, rs);
    }
    return rep;
}

FormulaReport evaluate(const CesaroParams& params, const ZeroSet& zs, const TruncationSpec& spec,
                       const EvaluateOptions& opts) {
    arith::validate(params);
    const auto lambda = arith::sieve_von_mangoldt(params.n);
    const auto rq = arith::compute_rq(lambda, params.n);
    return evaluate(params, rq, zs, spec, opts);
}

}  // namespace linnik::formula
