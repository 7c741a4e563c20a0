#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// runs the CLI through the shell, capturing stdout; stderr is discarded
Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " '" LINNIK_CLI_PATH "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("linnik-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
    CHECK(run("").code == 1);
    CHECK(run("evaluate --N 500").code == 1);                 // no k
    CHECK(run("evaluate --N 500 --k 2 --format xml").code == 1);
    CHECK(run("evaluate --N 500 --k 1.2").code == 1);         // theorem range
    CHECK(run("scan --N-list 500 --k 2").code == 1);          // too few N
    CHECK(run("evaluate --N 500 --k 2 --Z 500").code == 1);   // more zeros than loaded
    CHECK(run("no-such-command").code == 1);
}

TEST_CASE("data errors exit 2") {
    const fs::path bad = scratch("bad.txt");
    std::ofstream(bad) << "14.1347\n13.0\n";
    CHECK(run("zeros validate '" + bad.string() + "'").code == 2);
    CHECK(run("evaluate --N 500 --k 2 --zeros '" + bad.string() + "'").code == 2);
    CHECK(run("zeros info no-such-file-or-source").code == 2);
}

TEST_CASE("evaluate CSV") {
    const Run r = run("evaluate --N 500 --k 2");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind(std::string(linnik::cli::kCsvHeader) + "\n", 0) == 0);
    CHECK(r.out.find("\n500,2,") != std::string::npos);
    CHECK(r.out.find(",NA\n") != std::string::npos);
}

TEST_CASE("evaluate JSON and summary lines with --out") {
    const fs::path out = scratch("e.json");
    const Run r = run("evaluate --N-list 500,1000 --k 2 --format json --out '" + out.string() + "'");
    REQUIRE(r.code == 0);
    // one summary line per N
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
    const auto j = nlohmann::json::parse(slurp(out));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["N"] == 500);
    CHECK(j[1]["slope_na"].is_null());
}

TEST_CASE("scan writes the fitted slope and plot data") {
    const fs::path plot = scratch("plot.dat");
    const Run r = run("scan --N-list 500,1000,2000 --k 2 --plot-data '" + plot.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.find(",NA\n") == std::string::npos);
    CHECK(slurp(plot).rfind("log_N,log_abs_residual\n", 0) == 0);
    CHECK(run("scan --synthetic --N-list 500,1000,2000 --k 2").code == 0);
}

TEST_CASE("byte-identical reruns regardless of thread count") {
    const std::string args = "scan --N-list 500,1000,2000 --k 2.5 --format json";
    const Run a = run(args, "LINNIK_THREADS=1");
    const Run b = run(args, "LINNIK_THREADS=4");
    const Run c = run("--threads 3 " + args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const Run p1 = run("probe --d 2 --k 1.75 --N 100 --Z 10", "LINNIK_THREADS=1");
    const Run p2 = run("probe --d 2 --k 1.75 --N 100 --Z 10", "LINNIK_THREADS=8");
    REQUIRE(p1.code == 0);
    CHECK(p1.out == p2.out);
    CHECK(p1.out.rfind("j,gamma,partial_sum\n", 0) == 0);
}

TEST_CASE("selftest, zeros and bessel subcommands") {
    const Run s = run("selftest --json");
    CHECK(s.code == 0);
    const auto j = nlohmann::json::parse(s.out);
    REQUIRE(j.is_array());
    CHECK(j.size() >= 5);
    for (const auto& c : j) CHECK(c["pass"] == true);

    CHECK(run("zeros validate bundled").code == 0);
    const Run info = run("zeros info bundled");
    CHECK(info.code == 0);
    CHECK(info.out.find("100") != std::string::npos);

    const Run b = run("bessel --nu-re 2 --nu-im 0 --u 1");
    CHECK(b.code == 0);
    CHECK(b.out.find("0.1149034849319") != std::string::npos);  // J_2(1)
}
