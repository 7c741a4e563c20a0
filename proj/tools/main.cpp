#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "linnik/error.hpp"
#include "linnik/formula.hpp"
#include "linnik/parallel.hpp"
#include "linnik/specfun.hpp"
#include "linnik/zeros.hpp"
#include "report.hpp"
#include "selftest.hpp"

using namespace linnik;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

struct RunOptions {
    std::optional<std::size_t> n;
    std::vector<std::size_t> n_list;
    std::optional<double> k;
    std::string zeros = "bundled";
    std::size_t z = 50;
    std::optional<std::size_t> l, m;
    std::optional<double> tol;
    std::string out;
    std::string format = "csv";
    bool allow_subcritical = false;
    std::string mode = "theorem";
    int bits = specfun::PrecisionConfig{}.working_bits;
    double bessel_tol = specfun::PrecisionConfig{}.target_rel_tol;
    std::string plot_data;
    bool synthetic = false;
};

void add_run_flags(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--k", o.k, "Cesaro order k");
    cmd->add_option("--zeros", o.zeros, "zero source: 'bundled', a file, or a registry id");
    cmd->add_option("--Z", o.z, "number of zeros");
    cmd->add_option("--L", o.l, "lattice radius (default: chosen from tol)");
    cmd->add_option("--M", o.m, "single-index cutoff (default: chosen from tol)");
    cmd->add_option("--tol", o.tol, "absolute tolerance per term (default 1e-6 N^(k+1))");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--allow-subcritical", o.allow_subcritical, "permit k <= 3/2");
    cmd->add_option("--mode", o.mode, "theorem, probe or diagnostic")
        ->check(CLI::IsMember({"theorem", "probe", "diagnostic"}));
    cmd->add_option("--bits", o.bits, "MPFR precision ceiling for Bessel evaluations");
    cmd->add_option("--bessel-tol", o.bessel_tol, "relative tolerance for Bessel evaluations");
}

formula::TruncationSpec make_spec(const RunOptions& o) {
    formula::TruncationSpec s;
    s.Z = o.z;
    s.L = o.l;
    s.M = o.m;
    s.tol = o.tol;
    s.bessel.working_bits = o.bits;
    s.bessel.target_rel_tol = o.bessel_tol;
    return s;
}

formula::EvaluateOptions make_eval(const RunOptions& o) {
    formula::EvaluateOptions e;
    e.allow_subcritical = o.allow_subcritical;
    e.mode = o.mode == "diagnostic" ? formula::Mode::diagnostic
           : o.mode == "probe"      ? formula::Mode::probe
                                    : formula::Mode::theorem;
    return e;
}

double require_k(const RunOptions& o) {
    if (!o.k) throw PreconditionError("--k is required");
    if (!std::isfinite(*o.k)) throw PreconditionError("--k must be finite");
    return *o.k;
}

// Writes to --out when given, else stdout.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot open " + path + " for writing");
    write(f);
    if (!f) throw DataError("write to " + path + " failed");
}

void write_rows(const RunOptions& o, const std::vector<cli::ReportRow>& rows) {
    emit(o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            cli::write_json(os, rows);
        } else {
            cli::write_csv(os, rows);
        }
    });
}

void print_warnings(const formula::FormulaReport& r) {
    for (const auto& w : r.warnings) std::cerr << "warning: N=" << r.params.n << ": " << w << '\n';
}

void summary(const formula::FormulaReport& r) {
    if (r.m4_block4_variant) {
        std::cout << "diagnostic N=" << r.params.n
                  << " m4_block4_with_N^rho=" << cli::format_number(*r.m4_block4_variant) << '\n';
    }
}

int cmd_evaluate(const RunOptions& o) {
    if (o.n.has_value() == !o.n_list.empty()) throw PreconditionError("exactly one of --N and --N-list is required");
    const double k = require_k(o);
    const zeros::ZeroSet zs = zeros::resolve_zeros(o.zeros);
    const std::vector<std::size_t> ns = o.n ? std::vector<std::size_t>{*o.n} : o.n_list;

    std::vector<cli::ReportRow> rows;
    for (std::size_t n : ns) {
        const auto r = formula::evaluate({n, k}, zs, make_spec(o), make_eval(o));
        print_warnings(r);
        rows.push_back(cli::to_row(r));
        if (!o.out.empty()) {
            std::cout << "N=" << n << " k=" << cli::format_number(k)
                      << " residual=" << cli::format_number(r.residual)
                      << " normalized_residual=" << cli::format_number(r.normalized_residual) << '\n';
        }
        summary(r);
    }
    write_rows(o, rows);
    return kOk;
}

int synthetic_scan() {
    // planted residuals c N^3
    std::vector<double> x, y;
    for (double n : {500.0, 1000.0, 2000.0, 4000.0, 8000.0}) {
        x.push_back(n);
        y.push_back(0.37 * n * n * n);
    }
    const double slope = formula::loglog_slope(x, y);
    const bool ok = std::fabs(slope - 3.0) <= 1e-6;
    std::cout << "synthetic slope=" << cli::format_number(slope) << (ok ? " ok" : " FAILED") << '\n';
    return ok ? kOk : kNumeric;
}

int cmd_scan(const RunOptions& o) {
    if (o.synthetic) return synthetic_scan();
    if (o.n_list.size() < 3) throw PreconditionError("--N-list needs at least 3 values");
    const double k = require_k(o);
    const zeros::ZeroSet zs = zeros::resolve_zeros(o.zeros);
    const auto study = formula::scaling_study(o.n_list, k, zs, make_spec(o), make_eval(o));

    std::vector<cli::ReportRow> rows;
    for (const auto& r : study.reports) {
        print_warnings(r);
        summary(r);
        rows.push_back(cli::to_row(r, study.slope));
    }
    for (const auto& note : study.notes) std::cerr << "note: " << note << '\n';
    write_rows(o, rows);
    if (!o.plot_data.empty()) emit(o.plot_data, [&](std::ostream& os) { cli::write_plot_data(os, rows); });
    std::cout << "slope=" << (study.slope ? cli::format_number(*study.slope) : "NA") << '\n';
    return kOk;
}

int cmd_probe(int d, double k, double n, const std::string& zeros_spec, std::optional<std::size_t> z,
              double vmax, std::size_t cap, const std::string& out) {
    zeros::ZeroSet zs = zeros::resolve_zeros(zeros_spec);
    if (z) zs = zs.prefix(*z);
    const auto p = formula::lattice_probe(d, k, n, zs, vmax, cap);
    emit(out, [&](std::ostream& os) { cli::write_probe_csv(os, p, zs); });
    return kOk;
}

int cmd_selftest(bool json) {
    const auto checks = cli::run_selftest();
    bool ok = true;
    if (json) {
        std::cout << "[";
        for (std::size_t i = 0; i < checks.size(); ++i) {
            std::string detail;
            for (char c : checks[i].detail) {
                if (c == '"' || c == '\\') detail.push_back('\\');
                detail.push_back(c == '\n' ? ' ' : c);
            }
            std::cout << (i ? ",\n " : "\n ") << "{\"name\": \"" << checks[i].name
                      << "\", \"pass\": " << (checks[i].ok ? "true" : "false") << ", \"detail\": \""
                      << detail << "\"}";
        }
        std::cout << "\n]\n";
    }
    for (const auto& c : checks) {
        ok = ok && c.ok;
        if (!json) std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    if (!ok) {
        for (const auto& c : checks) {
            if (!c.ok) {
                std::cerr << "selftest: first failing check: " << c.name << '\n';
                break;
            }
        }
    }
    return ok ? kOk : kNumeric;
}

int cmd_zeros_info(const std::string& spec) {
    const auto zs = zeros::resolve_zeros(spec);
    std::cout << "source=" << zs.source_id << " count=" << zs.count();
    if (zs.count() > 0) {
        std::cout << " first_gamma=" << cli::format_number(zs.zeros.front().gamma)
                  << " last_gamma=" << cli::format_number(zs.zeros.back().gamma);
    }
    std::cout << '\n';
    return kOk;
}

int cmd_zeros_validate(const std::string& spec) {
    const auto zs = zeros::resolve_zeros(spec);
    zeros::validate(zs);
    std::cout << "OK count=" << zs.count() << '\n';
    return kOk;
}

int cmd_zeros_fetch(const std::string& source, std::size_t limit, const std::string& registry,
                    const std::string& cache, int timeout) {
    zeros::FetchOptions opts;
    if (!registry.empty()) opts.registry = registry;
    if (!cache.empty()) opts.cache_dir = cache;
    opts.timeout_seconds = timeout;
    const auto r = zeros::fetch_zeros(source, limit, opts);
    std::cout << (r.from_cache ? "cache hit: " : "fetched: ") << r.path.string() << '\n';
    return kOk;
}

int cmd_bessel(double re, double im, double u, const std::string& strategy, int bits, double tol) {
    specfun::PrecisionConfig cfg;
    cfg.working_bits = bits;
    cfg.target_rel_tol = tol;
    if (strategy != "auto") cfg.strategy_override = specfun::parse_strategy(strategy);
    const auto r = specfun::bessel_j_scaled({re, im}, u, cfg);
    const double la = r.value.log_abs();
    std::cout << "strategy=" << specfun::to_string(r.strategy) << " bits=" << r.bits
              << " rel_error_estimate=" << cli::format_number(r.rel_error_estimate) << '\n';
    if (std::fabs(la) < 700.0) {
        const auto v = r.value.value();
        std::cout << "J=" << cli::format_number(v.real()) << (v.imag() < 0 ? "" : "+")
                  << cli::format_number(v.imag()) << "i\n";
    } else {
        std::cout << "J=(" << cli::format_number(r.value.mant.real()) << (r.value.mant.imag() < 0 ? "" : "+")
                  << cli::format_number(r.value.mant.imag()) << "i)*2^" << r.value.exp2 << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cesaro averages of Linnik numbers: arithmetic side versus zeta-zero main terms"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: LINNIK_THREADS or hardware)");

    RunOptions ev;
    auto* evaluate = app.add_subcommand("evaluate", "evaluate the formula at one N or a list of N");
    evaluate->add_option("--N", ev.n, "upper limit N");
    evaluate->add_option("--N-list", ev.n_list, "several values of N")->delimiter(',');
    add_run_flags(evaluate, ev);

    RunOptions sc;
    auto* scan = app.add_subcommand("scan", "scaling study over a list of N with a log-log fit");
    scan->add_option("--N-list", sc.n_list, "ascending values of N (at least 3)")->delimiter(',');
    scan->add_option("--plot-data", sc.plot_data, "write log N, log|residual| pairs here");
    scan->add_flag("--synthetic", sc.synthetic, "fit planted c N^3 residuals and check slope 3");
    add_run_flags(scan, sc);

    auto* zeros_cmd = app.add_subcommand("zeros", "zero table management");
    zeros_cmd->require_subcommand(1);
    std::string zspec = "bundled", source = "odlyzko-zeros1", registry, cache;
    std::size_t limit = 100;
    int timeout = 30;
    auto* zfetch = zeros_cmd->add_subcommand("fetch", "download and cache a zero table");
    zfetch->add_option("--source", source, "registry id or URL");
    zfetch->add_option("--limit", limit, "number of ordinates");
    zfetch->add_option("--registry", registry, "registry file");
    zfetch->add_option("--cache-dir", cache, "cache directory (default: LINNIK_ZERO_CACHE)");
    zfetch->add_option("--timeout", timeout, "network timeout in seconds");
    auto* zvalidate = zeros_cmd->add_subcommand("validate", "check ordering and sanity of a table");
    zvalidate->add_option("spec", zspec, "'bundled', a file, or a registry id");
    auto* zinfo = zeros_cmd->add_subcommand("info", "count and ordinate range");
    zinfo->add_option("spec", zspec, "'bundled', a file, or a registry id");

    int pd = 2;
    double pk = 1.75, pn = 1000.0, vmax = 60.0;
    std::string pzeros = "bundled", pout;
    std::optional<std::size_t> pz;
    std::size_t cap = 4096;
    auto* probe = app.add_subcommand("probe", "partial sums of the lattice convergence probe");
    probe->add_option("--d", pd, "lattice dimension (1, 2 or 3)");
    probe->add_option("--k", pk, "order k");
    probe->add_option("--N", pn, "N");
    probe->add_option("--zeros", pzeros, "zero source");
    probe->add_option("--Z", pz, "use only the first Z zeros");
    probe->add_option("--vmax", vmax, "upper integration limit cap");
    probe->add_option("--lattice-cap", cap, "largest direct lattice sum length");
    probe->add_option("--out", pout, "output file (default: stdout)");

    bool json = false;
    auto* selftest = app.add_subcommand("selftest", "fast invariant suite");
    selftest->add_flag("--json", json, "machine-readable results");

    double bre = 0.0, bim = 0.0, bu = 1.0, btol = 1e-10;
    int bbits = 16384;
    std::string bstrat = "auto";
    auto* bessel = app.add_subcommand("bessel", "evaluate J_nu(u) once");
    bessel->add_option("--nu-re", bre, "Re nu");
    bessel->add_option("--nu-im", bim, "Im nu");
    bessel->add_option("--u", bu, "argument u >= 0");
    bessel->add_option("--strategy", bstrat, "auto, series, asymptotic or quadrature");
    bessel->add_option("--bits", bbits, "MPFR precision ceiling");
    bessel->add_option("--tol", btol, "relative tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (threads > 0) parallel::set_thread_count(threads);
        if (evaluate->parsed()) return cmd_evaluate(ev);
        if (scan->parsed()) return cmd_scan(sc);
        if (zfetch->parsed()) return cmd_zeros_fetch(source, limit, registry, cache, timeout);
        if (zvalidate->parsed()) return cmd_zeros_validate(zspec);
        if (zinfo->parsed()) return cmd_zeros_info(zspec);
        if (probe->parsed()) return cmd_probe(pd, pk, pn, pzeros, pz, vmax, cap, pout);
        if (selftest->parsed()) return cmd_selftest(json);
        if (bessel->parsed()) return cmd_bessel(bre, bim, bu, bstrat, bbits, btol);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    }
    return kUsage;
}
