#pragma once

#include <string>
#include <vector>

namespace linnik::cli {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Fast invariant suite: theta modularity, Laplace identity, Bessel
/// recurrence, r_Q against a triple loop for N <= 200, bundled zero table.
/// Every check runs; failures are reported, not thrown.
std::vector<Check> run_selftest();

}  // namespace linnik::cli
