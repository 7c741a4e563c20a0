#pragma once

// Report serialization. CSV columns:
//   N,k,lhs,m1,m2,m3,m4,residual,normalized_residual,slope_na
// slope_na carries the fitted log-log slope of |residual| for scan output and
// NA for single evaluations. JSON holds the same fields as an array of
// objects, with null in place of NA.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linnik/formula.hpp"

namespace linnik::cli {

/// 17 significant digits; nan, inf and -inf spelled out.
std::string format_number(double x);

struct ReportRow {
    std::size_t N = 0;
    double k = 0.0;
    double lhs = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0, residual = 0, normalized_residual = 0;
    std::optional<double> slope;
};

ReportRow to_row(const formula::FormulaReport& r, std::optional<double> slope = std::nullopt);

extern const char* const kCsvHeader;

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_json(std::ostream& out, const std::vector<ReportRow>& rows);

/// j,gamma,partial_sum (j is the number of zeros included).
void write_probe_csv(std::ostream& out, const formula::ProbeSeries& p, const zeros::ZeroSet& zs);

/// log_N,log_abs_residual for rows with nonzero residual.
void write_plot_data(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace linnik::cli
