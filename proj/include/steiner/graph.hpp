#pragma once

#include "steiner/rational.hpp"

#include <optional>
#include <vector>

namespace steiner {

struct Edge {
    int u = -1, v = -1;
    Rat cost;
};

/// Undirected instance of the Steiner tree problem: dense 0-based vertex
/// indices, terminal flags, simple edge list with nonnegative exact costs.
/// clone_of maps derived vertices (clones, subgraph vertices) back to the
/// vertex of the instance they were created from; empty means identity.
struct Instance {
    int n = 0;
    std::vector<char> terminal;  // size n
    std::vector<Edge> edges;
    std::vector<int> clone_of;  // empty, or size n

    int num_terminals() const;
    std::vector<int> terminals() const;
    int origin_of(int v) const { return clone_of.empty() ? v : clone_of[v]; }

    /// Checks the structural invariants (ids in range, no self-loops, no
    /// duplicate unordered pair, costs >= 0). Throws ParseError on violation.
    void validate() const;
};

/// Union-find over a dense index range; single-owner mutable state.
struct DisjointSets {
    std::vector<int> parent, rnk;
    int classes = 0;

    explicit DisjointSets(int n);
    int find(int x);
    bool unite(int x, int y);  // false if already joined
};

struct SteinerNeighborhood {
    std::vector<int> members;  // sorted vertex ids
};

/// Connected components of the subgraph induced by the non-terminal vertices.
std::vector<SteinerNeighborhood> steiner_neighborhoods(const Instance& inst);

/// b = max neighborhood cardinality (0 when there are no Steiner vertices).
int quasi_bipartite_bound(const Instance& inst);

/// Single-source shortest path distances (exact); nullopt for unreachable.
std::vector<std::optional<Rat>> shortest_paths_from(const Instance& inst, int src);

/// Applies assumptions A1/A2: prices every terminal pair, and every edge from
/// a Steiner vertex v to S_v and to all terminals, at shortest-path distance.
/// Keeps the cheaper of an existing edge and the shortest-path price.
/// Throws DisconnectedError if two terminals have no path.
Instance metric_closure(const Instance& inst);

/// Subgraph induced by `keep` (sorted unique vertex list), reindexed densely;
/// clone_of records the original ids.
Instance induced_subgraph(const Instance& inst, const std::vector<int>& keep);

/// FNV-1a digest of a canonical serialization, for report provenance.
std::string instance_digest(const Instance& inst);

}  // namespace steiner
