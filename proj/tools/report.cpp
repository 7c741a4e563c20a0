#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace linnik::cli {

const char* const kCsvHeader = "N,k,lhs,m1,m2,m3,m4,residual,normalized_residual,slope_na";

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ReportRow to_row(const formula::FormulaReport& r, std::optional<double> slope) {
    return {r.params.n, r.params.k, r.lhs, r.m1, r.m2, r.m3, r.m4,
            r.residual, r.normalized_residual, slope};
}

namespace {

std::vector<std::pair<const char*, double>> fields(const ReportRow& r) {
    return {{"k", r.k},   {"lhs", r.lhs}, {"m1", r.m1},
            {"m2", r.m2}, {"m3", r.m3},   {"m4", r.m4},
            {"residual", r.residual}, {"normalized_residual", r.normalized_residual}};
}

std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

}  // namespace

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << kCsvHeader << '\n';
    for (const ReportRow& r : rows) {
        out << r.N;
        for (const auto& [name, v] : fields(r)) out << ',' << format_number(v);
        out << ',' << (r.slope ? format_number(*r.slope) : "NA") << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ReportRow& r = rows[i];
        out << (i ? ",\n " : "\n ") << "{\"N\": " << r.N;
        for (const auto& [name, v] : fields(r)) out << ", \"" << name << "\": " << json_number(v);
        out << ", \"slope_na\": " << (r.slope ? json_number(*r.slope) : "null") << "}";
    }
    out << (rows.empty() ? "]\n" : "\n]\n");
}

void write_probe_csv(std::ostream& out, const formula::ProbeSeries& p, const zeros::ZeroSet& zs) {
    out << "j,gamma,partial_sum\n";
    for (std::size_t j = 0; j < p.partial_sums.size(); ++j) {
        out << (j + 1) << ',' << format_number(zs[j].gamma) << ',' << format_number(p.partial_sums[j])
            << '\n';
    }
}

void write_plot_data(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "log_N,log_abs_residual\n";
    for (const ReportRow& r : rows) {
        if (r.residual == 0.0) continue;
        out << format_number(std::log(static_cast<double>(r.N))) << ','
            << format_number(std::log(std::fabs(r.residual))) << '\n';
    }
}

}  // namespace linnik::cli
