#pragma once

// The four analytic main terms M1-M4, their truncation bounds, the full
// comparison against the arithmetic side, the lattice convergence probe and
// N-scaling studies.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linnik/arithmetic.hpp"
#include "linnik/specfun.hpp"
#include "linnik/zeros.hpp"

namespace linnik::formula {

using arith::CesaroParams;
using zeros::ZeroSet;
using cplx = std::complex<double>;

/// Cutoffs for the infinite sums. Unset L / M / tol are chosen by resolve().
struct TruncationSpec {
    std::size_t Z = 50;
    std::optional<std::size_t> L;  // lattice radius: l1, l2 >= 1, l1^2 + l2^2 <= L^2
    std::optional<std::size_t> M;  // single-index cutoff m <= M
    std::optional<double> tol;     // absolute target per term, default 1e-6 N^{k+1}
    specfun::PrecisionConfig bessel;
};

/// Throws PreconditionError (tol <= 0 or not finite).
void validate(const TruncationSpec& spec);

struct ResolvedSpec {
    std::size_t Z = 0;
    std::size_t L = 0;
    std::size_t M = 0;
    double tol = 0.0;
    specfun::PrecisionConfig bessel;
};

double default_tolerance(const CesaroParams& params);

/// Fills L and M with the smallest cutoffs whose tail bounds meet tol.
/// RangeError if Z exceeds the loaded zeros.
ResolvedSpec resolve(const TruncationSpec& spec, const CesaroParams& params, const ZeroSet& zs);

// ---- lattices and tail bounds -------------------------------------------------

/// Points of the two Bessel sums, keyed by l = l1^2 + l2^2 (plane) or l = m^2
/// (line) with their multiplicity, ascending in l.
enum class Geometry { plane, line };

struct PointSet {
    Geometry geometry = Geometry::plane;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> points;
};

PointSet plane_points(std::size_t radius);
PointSet line_points(std::size_t count);

/// log of 2 sqrt(2/pi) cosh(pi Im nu / 2) (u^2 + |nu|^2)^{-1/4}
/// min(1, (e u / 2|nu|)^{Re nu}), an empirical majorant of |J_nu(u)| for
/// 0 <= Re nu <= 10 (checked in the test suite).
double log_bessel_envelope(cplx nu, double u);

/// Bound on sum over points with l >= x of mult * l^{-p}; +inf when divergent.
double power_tail(Geometry g, double x, double p);

/// Bound on sum over points with l >= x of |J_nu(2 pi sqrt(l N))| l^{-Re nu / 2}
/// via the envelope.
double bessel_tail(Geometry g, cplx nu, double n, double x);
double log_bessel_tail(Geometry g, cplx nu, double n, double x);

// ---- main terms --------------------------------------------------------------

struct TermResult {
    double value = 0.0;
    double zero_tail = 0.0;    // effect of dropping zeros j >= Z
    double cutoff_tail = 0.0;  // effect of the lattice (L) or single-index (M) cutoff
    std::vector<double> blocks;
    std::vector<std::string> warnings;
    double seconds = 0.0;

    double tail_bound() const { return zero_tail + cutoff_tail; }
};

TermResult m1_term(const CesaroParams& params);
TermResult m2_term(const CesaroParams& params, const ZeroSet& zs, const ResolvedSpec& spec);
TermResult m3_term(const CesaroParams& params, const ZeroSet& zs, const ResolvedSpec& spec);
TermResult m4_term(const CesaroParams& params, const ZeroSet& zs, const ResolvedSpec& spec);

/// The fourth M4 block with N^{rho} in place of N^{rho/2}; diagnostic only.
double m4_block4_variant(const CesaroParams& params, const ZeroSet& zs, const ResolvedSpec& spec);

/// Bound on the part of the M3 (resp. M4) tail bound due to the cutoff only,
/// exposed for cutoff selection.
double m3_lattice_tail(const CesaroParams& params, const ZeroSet& zs, std::size_t z, std::size_t radius);
double m4_theta_tail(const CesaroParams& params, const ZeroSet& zs, std::size_t z, std::size_t count);

// ---- full comparison ---------------------------------------------------------

enum class Mode { theorem, probe, diagnostic };

struct EvaluateOptions {
    Mode mode = Mode::theorem;
    /// Probe and diagnostic modes still require this for k <= 3/2.
    bool allow_subcritical = false;
};

struct TermTiming {
    double lhs = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0;
};

struct FormulaReport {
    CesaroParams params;
    ResolvedSpec spec;
    double lhs = 0.0;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    double total = 0.0;
    double residual = 0.0;
    double normalized_residual = 0.0;
    double tail_m2 = 0.0, tail_m3 = 0.0, tail_m4 = 0.0;
    TermResult t2, t3, t4;
    std::optional<double> m4_block4_variant;  // diagnostic mode
    std::vector<std::string> warnings;
    TermTiming wallclock;
};

/// Throws TheoremRangeError for k <= 3/2 unless opts.allow_subcritical, and
/// TermError naming the failing term.
FormulaReport evaluate(const CesaroParams& params, const ZeroSet& zs, const TruncationSpec& spec,
                       const EvaluateOptions& opts = {});
/// Same, with a precomputed r_Q table (limit >= N).
FormulaReport evaluate(const CesaroParams& params, const arith::LinnikTable& rq, const ZeroSet& zs,
                       const TruncationSpec& spec, const EvaluateOptions& opts = {});

// ---- probe and scaling -------------------------------------------------------

struct ProbeSeries {
    int d = 0;
    double k = 0.0;
    std::vector<double> partial_sums;  // partial_sums[j] uses zeros 0..j
};

/// Partial sums over zeros of
///   gamma^{-k-3/2} int_0^{min(gamma, vmax)} omega(N v^2 / gamma^2)^d e^{-v} v^{k+beta} dv,
/// where omega(x) = sum_{l >= 1} e^{-x l^2}. The lattice sum is taken directly
/// up to lattice_cap terms and through the theta transformation beyond.
ProbeSeries lattice_probe(int d, double k, double n, const ZeroSet& zs, double vmax = 60.0,
                         std::size_t lattice_cap = 4096);

/// Least-squares slope of log y against log x. PreconditionError on fewer
/// than two points or nonpositive values.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingRow {
    std::size_t N = 0;
    double lhs = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0, residual = 0, normalized_residual = 0;
};

struct ScalingStudy {
    double k = 0.0;
    std::vector<ScalingRow> rows;
    std::vector<FormulaReport> reports;
    std::optional<double> slope;  // unset when fewer than two nonzero residuals
    std::vector<std::string> notes;
};

/// N_list ascending with at least 3 entries (SizeError otherwise).
ScalingStudy scaling_study(const std::vector<std::size_t>& n_list, double k, const ZeroSet& zs,
                           const TruncationSpec& spec, const EvaluateOptions& opts = {});

}  // namespace linnik::formula
