#pragma once

#include "steiner/components.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steiner {

struct VerifyItem {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

/// Runs the module invariant suite against one instance: closure properties,
/// catalog structure, strong duality, the smst/loss identities, selection
/// monotonicity, the solver's certificates and (within guards) the LP
/// oracles. Items outside a size guard are reported as skipped, not failed.
std::vector<VerifyItem> verify_instance(const Instance& inst, int r, int max_ground = 12,
                                        uint64_t seed = 1);

bool all_passed(const std::vector<VerifyItem>& items);

/// Structural equality (same vertex count, terminal flags and edge multiset).
bool same_instance(const Instance& a, const Instance& b);

}  // namespace steiner
