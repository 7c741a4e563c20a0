#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>

#include "linnik/error.hpp"
#include "linnik/zeros.hpp"

namespace linnik::zeros {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view tok, double& out) {
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    const auto r = std::from_chars(first, last, out);
    return r.ec == std::errc() && r.ptr == last && std::isfinite(out);
}

}  // namespace

ZeroSet ZeroSet::prefix(std::size_t n) const {
    if (n > count()) throw RangeError("ZeroSet::prefix: n exceeds zero count");
    ZeroSet out;
    out.zeros.assign(zeros.begin(), zeros.begin() + static_cast<std::ptrdiff_t>(n));
    out.source_id = source_id;
    return out;
}

void validate(const ZeroSet& zs) {
    for (std::size_t i = 0; i < zs.count(); ++i) {
        const ZetaZero& z = zs.zeros[i];
        if (!(z.gamma > 0.0)) throw SanityError("zero " + std::to_string(i) + ": gamma <= 0");
        if (!(z.beta > 0.0 && z.beta < 1.0)) {
            throw SanityError("zero " + std::to_string(i) + ": beta outside (0, 1)");
        }
        if (i > 0 && !(z.gamma > zs.zeros[i - 1].gamma)) {
            throw MonotonicityError("ordinates not strictly ascending at zero index " +
                                        std::to_string(i),
                                    i + 1);
        }
    }
    if (zs.count() > 0 && !(zs.zeros[0].gamma > 14.0 && zs.zeros[0].gamma < 14.3)) {
        throw SanityError("first ordinate " + std::to_string(zs.zeros[0].gamma) +
                          " outside (14.0, 14.3)");
    }
}

ZeroSet parse_zeros(std::istream& in, std::string source_id) {
    ZeroSet zs;
    zs.source_id = std::move(source_id);
    std::string line;
    std::size_t lineno = 0;
    double prev = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;

        const auto sep = t.find_first_of(" \t,");
        const std::string_view g_tok = t.substr(0, sep);
        std::string_view b_tok;
        if (sep != std::string_view::npos) b_tok = trim(t.substr(sep + 1));
        if (!b_tok.empty() && b_tok.front() == ',') b_tok = trim(b_tok.substr(1));

        ZetaZero z;
        if (!parse_double(g_tok, z.gamma)) {
            throw ParseError("cannot parse ordinate '" + std::string(g_tok) + "'", lineno);
        }
        if (!b_tok.empty()) {
            if (!parse_double(b_tok, z.beta)) {
                throw ParseError("cannot parse beta '" + std::string(b_tok) + "'", lineno);
            }
            if (!(z.beta > 0.0 && z.beta < 1.0)) throw ParseError("beta outside (0, 1)", lineno);
        }
        if (!(z.gamma > 0.0)) throw ParseError("ordinate must be positive", lineno);
        if (!zs.zeros.empty() && !(z.gamma > prev)) {
            throw MonotonicityError("ordinate " + std::string(g_tok) +
                                        " does not exceed the previous one",
                                    lineno);
        }
        if (zs.zeros.empty() && !(z.gamma > 14.0 && z.gamma < 14.3)) {
            throw SanityError("first ordinate " + std::string(g_tok) + " (line " +
                              std::to_string(lineno) + ") outside (14.0, 14.3)");
        }
        prev = z.gamma;
        zs.zeros.push_back(z);
    }
    return zs;
}

ZeroSet load_zeros(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open zero file " + path.string());
    return parse_zeros(in, path.string());
}

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("LINNIK_DATA_DIR"); env && *env) return env;
    return LINNIK_DATA_DIR;
}

std::filesystem::path bundled_zeros_path() { return data_dir() / "zeros100.txt"; }

ZeroSet resolve_zeros(const std::string& spec) {
    if (spec == "bundled") {
        ZeroSet zs = load_zeros(bundled_zeros_path());
        zs.source_id = "bundled";
        return zs;
    }
    if (std::filesystem::exists(spec)) return load_zeros(spec);
    for (const SourceEntry& e : load_registry(default_registry_path())) {
        if (e.id == spec) {
            const FetchResult r = fetch_zeros(spec, e.capacity);
            ZeroSet zs = load_zeros(r.path);
            zs.source_id = spec;
            return zs;
        }
    }
    throw DataError("zero source '" + spec + "' is neither 'bundled', a file, nor a registry id");
}

}  // namespace linnik::zeros
