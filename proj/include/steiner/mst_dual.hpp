#pragma once

#include "steiner/components.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace steiner {

/// A partition of a dense ground set, stored as representative labels.
struct Partition {
    std::vector<int> block_of;  // block_of[v] = label, any stable labeling
    int rank() const;           // number of parts
};

int steiner_rank(const Partition& p, const std::vector<char>& terminal);

/// (number of parts containing a terminal of K) - 1, K given as ground ids.
int rank_contribution(const Partition& p, const std::vector<int>& k_vertices);

/// One epoch of the Kruskal process: the partition active from `start`, for
/// duration `y` (zero for simultaneous merges under the index tie-break).
struct TimelineEvent {
    Rat start;
    Rat y;
    Partition partition;
    int rank;
    int sbar;  // Steiner rank
};

struct DualTimeline {
    std::vector<TimelineEvent> events;
    Rat total_time;
};

struct KruskalResult {
    std::vector<int> tree_edges;  // indices into the instance edge list
    Rat cost;
    DualTimeline timeline;
};

/// Kruskal instrumented as the primal-dual process: ties broken by edge
/// index (simulating infinitesimal perturbation), so that the dual objective
/// sum(r(pi)-1) y_pi equals the tree cost exactly.
KruskalResult kruskal_dual(const Instance& g);  // throws DisconnectedError

/// Minimum spanning forest cost (no duality bookkeeping; disconnected ok).
Rat kruskal_forest_cost(const Instance& g);

/// For each listed vertex pair, the maximum edge cost on the unique tree
/// path (the Kruskal merge time). verts are ground ids; result is indexed by
/// position in verts.
std::vector<std::vector<Rat>> bottleneck_matrix(const Instance& g,
                                                const std::vector<int>& tree_edges,
                                                const std::vector<int>& verts);

/// sum over the timeline of rc^pi_K * y_pi.
Rat dual_load(const DualTimeline& tl, const std::vector<int>& k_vertices);

/// The state of Algorithm 1 for a sub-collection S of full components
/// (always containing all terminal pairs). Immutable after construction;
/// add_component returns a fresh state.
struct CollectionState {
    const ComponentCatalog* cat = nullptr;
    std::vector<int> selected;       // non-pair component indices, ascending
    std::vector<char> in_collection;  // per component index (pairs: 1)
    Instance graph;                  // R-indices + clones of selected comps
    std::vector<int> clone_base;     // per comp index, -1 if absent
    KruskalResult mst;
    Rat mst_cost;
    Rat loss_cost;   // sum of losses of selected components (Fact on losses)
    Rat smst_value;  // sum (sbar(pi)-1) y_pi; equals mst - loss exactly
    std::vector<std::vector<Rat>> bn;  // |R| x |R| terminal merge times
};

CollectionState make_state(const ComponentCatalog& cat, const std::vector<int>& selected);
CollectionState initial_state(const ComponentCatalog& cat);
CollectionState add_component(const CollectionState& s, int comp_index);

/// dual_load computed as the bottleneck-MST over K's terminals; agrees
/// exactly with the timeline sum (checked in debug builds).
Rat state_dual_load(const CollectionState& s, int comp_index);

bool is_violated(const CollectionState& s, int comp_index);

/// RZ selection value f(K) = loss(K) / (smst(S) - smst(S u {K})); nullopt
/// encodes +infinity (denominator <= 0).
std::optional<Rat> selection_value(const CollectionState& s, int comp_index);

}  // namespace steiner
