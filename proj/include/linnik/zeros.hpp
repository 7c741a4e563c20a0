#pragma once

// Nontrivial zeta zeros: loading, validation, fetching/caching, and weighted
// sums over conjugate pairs rho, conj(rho).

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace linnik::zeros {

using cplx = std::complex<double>;

struct ZetaZero {
    double gamma = 0.0;
    double beta = 0.5;

    cplx rho() const noexcept { return {beta, gamma}; }
};

struct ZeroSet {
    std::vector<ZetaZero> zeros;
    std::string source_id;

    std::size_t count() const noexcept { return zeros.size(); }
    const ZetaZero& operator[](std::size_t i) const { return zeros[i]; }
    /// First n zeros (n <= count()).
    ZeroSet prefix(std::size_t n) const;
};

/// Strictly ascending gamma, beta in (0, 1), first gamma in (14.0, 14.3).
/// Throws MonotonicityError / SanityError.
void validate(const ZeroSet& zs);

/// Text format: one ordinate per line, optionally followed by beta; blank
/// lines and lines starting with '#' are ignored. Line numbers in errors are
/// 1-based physical lines.
ZeroSet parse_zeros(std::istream& in, std::string source_id);
ZeroSet load_zeros(const std::filesystem::path& path);

/// Directory holding the bundled data files (LINNIK_DATA_DIR overrides the
/// compiled-in location).
std::filesystem::path data_dir();
/// The bundled first-100-zeros table.
std::filesystem::path bundled_zeros_path();

/// "bundled", a file path, or a registry source id (served from the cache,
/// fetching if needed).
ZeroSet resolve_zeros(const std::string& spec);

// ---- fetching ----------------------------------------------------------------

struct SourceEntry {
    std::string id;
    std::string url;     // http(s):// or file:// (relative file paths resolve
                         // against the registry's directory)
    std::string sha256;  // of the raw download; empty when not pinned
    std::size_t capacity = 0;
};

std::filesystem::path default_registry_path();
std::vector<SourceEntry> load_registry(const std::filesystem::path& path);
/// LINNIK_ZERO_CACHE, else $XDG_CACHE_HOME/linnik/zeros, else ~/.cache/linnik/zeros.
std::filesystem::path default_cache_dir();

struct FetchOptions {
    std::optional<std::filesystem::path> registry;
    std::optional<std::filesystem::path> cache_dir;
    int timeout_seconds = 30;
};

struct FetchResult {
    std::filesystem::path path;
    bool from_cache = false;
};

/// Downloads (or serves from cache) the first `limit` ordinates of a named
/// source or URL and stores them in the canonical text format. Cached files
/// carry a sidecar checksum; a mismatch purges the entry and raises
/// IntegrityError. Network failures raise FetchError.
FetchResult fetch_zeros(const std::string& source, std::size_t limit,
                        const FetchOptions& opts = {});

std::string sha256_hex(const std::string& bytes);

// ---- sums over zeros ----------------------------------------------------------

using ZeroFunction = std::function<cplx(cplx)>;

/// 2 sum_{j<Z} Re f(rho_j), valid when f(conj rho) = conj f(rho). Ascending
/// gamma, compensated, chunked deterministic reduction. RangeError if
/// Z > zs.count().
double paired_zero_sum(const ZeroFunction& f, const ZeroSet& zs, std::size_t z);

/// sum_{j<Z} (f(rho_j) + f(conj rho_j)) for f without conjugate symmetry.
cplx conjugate_pair_sum(const ZeroFunction& f, const ZeroSet& zs, std::size_t z);

/// Riemann-von Mangoldt count N(T) ~ (T/2pi) log(T/2pi e) + 7/8 and its
/// inverse, used to place zeros beyond the table.
double zero_count_model(double t);
double ordinate_model(double index);

/// Upper bound on |sum_{j>=Z} Gamma(rho_j) / Gamma(rho_j + k + c) N^{k+c-1+rho_j}|
/// over both members of every pair (c = `power`). Tabulated zeros beyond Z
/// are summed exactly in modulus; past the table the ratio is modelled as
/// gamma^{-(k+c)} e^{(k+c)^2 / gamma} and integrated against the zero density
/// (1/2pi) log(gamma/2pi). Safety factor 2. Returns +inf when k + c <= 1.
double zero_tail_bound(double k, double n, double power, std::size_t z, const ZeroSet& zs);

}  // namespace linnik::zeros
