#pragma once

#include "steiner/graph.hpp"

#include <cstdint>
#include <string>

namespace steiner {

enum class Family { Skutella, RandomBQuasi, Star, Path };

struct GeneratorSpec {
    Family family = Family::RandomBQuasi;
    int n = 8;        // total vertex count
    int b = 1;        // max Steiner neighborhood cardinality
    uint64_t seed = 0;
    long cost_lo = 1, cost_hi = 10;
};

Family family_from_name(const std::string& name);  // throws ParseError

/// Skutella's integrality-gap example: 7 terminal nodes for the Fano points,
/// 7 Steiner nodes for the Fano lines, a point-line edge iff non-incident,
/// plus one extra terminal adjacent to all Steiner nodes; unit costs.
Instance generate_skutella();

/// Connected b-quasi-bipartite instance, metric-closed, deterministic in the
/// seed. All Steiner neighborhoods have size <= b and at least one has size
/// exactly b. Throws InfeasibleSpecError when n < b + 2.
Instance generate_random_bquasi(const GeneratorSpec& spec);

/// One Steiner center joined to n-1 terminals (costs drawn from the range).
Instance generate_star(const GeneratorSpec& spec);

/// Path on n vertices, terminals at the two ends.
Instance generate_path(const GeneratorSpec& spec);

Instance generate(const GeneratorSpec& spec);

}  // namespace steiner
