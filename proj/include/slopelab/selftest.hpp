#pragma once

#include <cstdint>
#include <vector>

#include "slopelab/division_algebra.hpp"

namespace slopelab {

/// Randomized invariant checks across all modules, seeded for
/// reproducibility. Backs `slopelab selftest`.
std::vector<CheckResult> run_selftest(std::uint64_t seed, int jobs = 1);

}  // namespace slopelab
