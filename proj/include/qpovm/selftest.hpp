#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpovm {

struct SelftestResult {
    std::string name;
    bool pass = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
};

/// Seeded property checks over randomized inputs: channel duality,
/// Mueller/Kraus consistency, POVM completeness and positivity,
/// unbiasedness of random unitary mixtures, and the closed-form energy
/// identities against the full simulation.
std::vector<SelftestResult> run_selftests(std::uint64_t seed);

} // namespace qpovm
