#include <httplib.h>
#include <json.hpp>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "linnik/error.hpp"
#include "linnik/zeros.hpp"

namespace linnik::zeros {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const fs::path& p, const std::string& bytes) {
    const fs::path tmp = p.string() + ".part";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out << bytes;
        if (!out) throw DataError("short write to " + tmp.string());
    }
    fs::rename(tmp, p);
}

bool is_url(const std::string& s) { return s.find("://") != std::string::npos; }

std::string download(const std::string& url, const fs::path& base_dir, int timeout,
                     const std::string& cache_note) {
    const auto scheme_end = url.find("://");
    const std::string scheme = url.substr(0, scheme_end);
    const std::string rest = url.substr(scheme_end + 3);

    if (scheme == "file") {
        fs::path p = rest;
        if (p.is_relative()) p = base_dir / p;
        std::ifstream in(p, std::ios::binary);
        if (!in) throw FetchError("cannot open " + p.string() + " (" + cache_note + ")");
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    if (scheme != "http" && scheme != "https") {
        throw FetchError("unsupported URL scheme '" + scheme + "'");
    }
    const auto slash = rest.find('/');
    const std::string host = scheme + "://" + rest.substr(0, slash);
    const std::string path = slash == std::string::npos ? "/" : rest.substr(slash);

    httplib::Client cli(host);
    cli.set_connection_timeout(timeout, 0);
    cli.set_read_timeout(timeout, 0);
    cli.set_follow_location(true);
    auto res = cli.Get(path);
    if (!res) {
        throw FetchError("GET " + url + " failed: " + httplib::to_string(res.error()) + " (" +
                         cache_note + ")");
    }
    if (res->status != 200) {
        throw FetchError("GET " + url + " returned HTTP " + std::to_string(res->status) + " (" +
                         cache_note + ")");
    }
    return res->body;
}

// First `limit` ordinates of a raw table, tokens kept verbatim.
std::string canonicalize(const std::string& raw, std::size_t limit, const std::string& id) {
    std::istringstream in(raw);
    std::ostringstream out;
    out << "# zeta zero ordinates, source " << id << ", first " << limit << "\n";
    std::string line;
    std::size_t n = 0;
    while (n < limit && std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok.front() == '#') continue;
        out << tok << "\n";
        ++n;
    }
    if (n < limit) {
        throw SanityError("source " + id + " provided only " + std::to_string(n) +
                          " ordinates, " + std::to_string(limit) + " requested");
    }
    return out.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

fs::path default_registry_path() {
    if (const char* env = std::getenv("LINNIK_ZERO_REGISTRY"); env && *env) return env;
    return data_dir() / "zero_sources.json";
}

std::vector<SourceEntry> load_registry(const fs::path& path) {
    std::vector<SourceEntry> out;
    if (!fs::exists(path)) return out;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("zero source registry: ") + e.what(), 0);
    }
    for (const auto& s : j.at("sources")) {
        SourceEntry e;
        e.id = s.at("id").get<std::string>();
        e.url = s.at("url").get<std::string>();
        if (s.contains("sha256") && !s["sha256"].is_null()) e.sha256 = s["sha256"].get<std::string>();
        if (s.contains("capacity")) e.capacity = s["capacity"].get<std::size_t>();
        out.push_back(std::move(e));
    }
    return out;
}

fs::path default_cache_dir() {
    if (const char* env = std::getenv("LINNIK_ZERO_CACHE"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        return fs::path(xdg) / "linnik" / "zeros";
    }
    if (const char* home = std::getenv("HOME"); home && *home) {
        return fs::path(home) / ".cache" / "linnik" / "zeros";
    }
    return fs::temp_directory_path() / "linnik-zeros";
}

FetchResult fetch_zeros(const std::string& source, std::size_t limit, const FetchOptions& opts) {
    if (limit == 0) throw PreconditionError("fetch_zeros: limit must be >= 1");
    const fs::path registry = opts.registry.value_or(default_registry_path());

    std::optional<SourceEntry> entry;
    for (SourceEntry& e : load_registry(registry)) {
        if (e.id == source) entry = std::move(e);
    }
    if (!entry) {
        if (!is_url(source)) {
            throw DataError("unknown zero source '" + source + "' (not in " + registry.string() +
                            " and not a URL)");
        }
        entry = SourceEntry{"url-" + sha256_hex(source).substr(0, 16), source, "", 0};
    }
    if (entry->capacity != 0 && limit > entry->capacity) {
        throw RangeError("fetch_zeros: limit " + std::to_string(limit) + " exceeds capacity " +
                         std::to_string(entry->capacity) + " of " + entry->id);
    }

    const fs::path dir = opts.cache_dir.value_or(default_cache_dir());
    fs::create_directories(dir);
    const fs::path file = dir / (entry->id + "-" + std::to_string(limit) + ".txt");
    const fs::path side = file.string() + ".sha256";

    if (fs::exists(file)) {
        const std::string content = read_file(file);
        const bool has_side = fs::exists(side);
        bool ok = has_side && read_file(side) == sha256_hex(content) + "\n";
        if (ok) {
            try {
                std::istringstream in(content);
                ok = parse_zeros(in, entry->id).count() == limit;
            } catch (const DataError&) {
                ok = false;
            }
        }
        if (!ok) {
            fs::remove(file);
            fs::remove(side);
            throw IntegrityError("cache entry " + file.string() +
                                 " failed its checksum; entry purged");
        }
        return {file, true};
    }

    const std::string raw =
        download(entry->url, registry.parent_path(), opts.timeout_seconds,
                 "cache miss: " + file.string());
    if (!entry->sha256.empty()) {
        const std::string got = sha256_hex(raw);
        if (got != entry->sha256) {
            throw IntegrityError("checksum mismatch for " + entry->id + ": expected " +
                                 entry->sha256 + ", got " + got);
        }
    }
    const std::string canonical = canonicalize(raw, limit, entry->id);
    {
        std::istringstream in(canonical);
        validate(parse_zeros(in, entry->id));
    }
    write_file_atomic(file, canonical);
    write_file_atomic(side, sha256_hex(canonical) + "\n");
    return {file, false};
}

}  // namespace linnik::zeros
