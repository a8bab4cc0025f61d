#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cosparse/verify.hpp"

namespace cosparse {

// Default verification families, one batch per seed:
//   norm    - norm-chain comparisons on Gaussian, sparse, and constant vectors
//   cone    - synthetic (x, x_hat) pairs (equal, zero, perturbed, tie-heavy)
//   block   - synthetic pairs with structured analysis patterns (equal-magnitude
//             blocks, geometric decay) for the block comparisons
//   rip     - small recovery problems (d in {8,9,10}, n = d+2, m = 8, s = 2,
//             M = 3) with exact RIP constants and the exhaustive solver
//   theorem - a wider-aspect family (d = 12, n = 14, m = 200, s = 1, M = 11)
//             where the bound's feasibility conditions actually pass
struct SuiteConfig {
    uint64_t seed_lo = 1;
    uint64_t seed_hi = 1000;
    std::vector<std::string> families = {"norm", "cone", "block", "rip", "theorem"};
};

struct KindStats {
    std::string name;
    bool gating = true;  // false: violations are logged but do not fail the suite
    long checked = 0;
    long excluded = 0;  // premise-excluded reports
    long resolved = 0;  // rescued by the long-double pass
    long violations = 0;
};

struct SuiteResult {
    std::vector<KindStats> stats;
    std::vector<CheckReport> findings;  // persistent violations, in run order
    long gating_violations() const;
    bool ok() const { return gating_violations() == 0; }
    std::string summary_text() const;
    std::string findings_csv() const;
};

SuiteResult run_suite(const SuiteConfig& cfg);

}  // namespace cosparse
