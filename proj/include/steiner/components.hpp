#pragma once

#include "steiner/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace steiner {

/// A minimum-cost full component: a tree whose leaves are exactly the
/// terminal set and whose internal vertices are all Steiner. Stored in local
/// coordinates: 0..|K|-1 are the terminals (by ascending R-index), followed
/// by the internal Steiner vertices.
struct FullComponent {
    std::vector<int> terms;  // R-indices, ascending
    uint32_t term_mask = 0;
    int num_internal = 0;
    std::vector<Edge> edges;        // local coordinates
    std::vector<int> internal_orig;  // original instance vertex per internal
    Rat cost;
    Rat loss_cost;
    std::vector<int> loss_edges;  // indices into `edges`

    int size() const { return static_cast<int>(terms.size()); }
    bool is_pair() const { return terms.size() == 2; }
    int local_vertex_count() const { return size() + num_internal; }
};

/// K_r: one minimum-cost full component per achievable terminal subset of
/// size 2..r, plus the redefined working graph where each component got
/// fresh Steiner clones (components are edge disjoint and internally vertex
/// disjoint by construction).
struct ComponentCatalog {
    int r = 2;
    Instance closed;                // the metric-closed instance
    std::vector<int> term_vertex;   // R-index -> vertex id in `closed`
    std::vector<int> rindex;        // vertex id -> R-index or -1
    std::vector<FullComponent> comps;  // ordered by (|K|, mask)
    std::vector<int> pair_comp;     // |R|*|R| flattened -> comp index (pairs)
    Instance working_graph;         // |R| terminal vertices + clones
    std::vector<int> clone_base;    // per comp: first clone vertex id (or -1)

    int num_terminals() const { return static_cast<int>(term_vertex.size()); }
    int pair_index(int i, int j) const {
        return pair_comp[static_cast<size_t>(i) * term_vertex.size() + j];
    }
};

/// Loss of a subgraph: minimum-cost edge subset such that every connected
/// component contains a terminal (equivalently an MST after contracting all
/// terminals into one super-node). Returns (edge indices, cost).
std::pair<std::vector<int>, Rat> subgraph_loss(int n, const std::vector<Edge>& edges,
                                               const std::vector<char>& terminal);

/// Computes (loss_edges, loss_cost) for a component in place.
void component_loss(FullComponent& comp);

/// Minimum-cost full component of the metric-closed instance with terminal
/// set K (vertex ids of `closed`). Returns nullopt when no full component
/// with exactly this leaf set exists. |K| = 2 yields the direct edge.
std::optional<FullComponent> min_full_component(const Instance& closed,
                                                const std::vector<int>& K);

/// Builds K_r over the metric-closed instance. Requires r >= 2; the subset
/// enumeration is bitmask-based and guarded at |R| <= 20.
ComponentCatalog build_catalog(const Instance& closed, int r);

}  // namespace steiner
