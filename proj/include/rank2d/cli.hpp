#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rank2d/googlerank.hpp"
#include "rank2d/netstats.hpp"
#include "rank2d/overlap.hpp"

namespace rank2d::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kParseError = 2,
    kConvergenceFailure = 3,
    kContractViolation = 4,
};

/// Settings shared by every subcommand. Damping, grid size and window follow
/// the published defaults; the rest are tool defaults.
struct RunConfig {
    double alpha = kDefaultDamping;
    double alpha_star = kDefaultDamping;
    double tol = kDefaultTolerance;
    std::size_t max_iter = kDefaultMaxIterations;
    std::size_t grid_cells = kDefaultGridCells;
    std::size_t window = kDefaultWindow;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Entry point of the rank2d tool; argv[0] is the program name.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace rank2d::cli
