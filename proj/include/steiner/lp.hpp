#pragma once

#include "steiner/mst_dual.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace steiner {

/// Streams all set partitions of {0..n-1} exactly once, as restricted-growth
/// strings in lexicographic order.
class PartitionEnumerator {
  public:
    explicit PartitionEnumerator(int n);
    /// Fills `p` with the next partition; false when exhausted.
    bool next(Partition& p);

  private:
    int n_;
    bool started_ = false;
    std::vector<int> rgs_, maxv_;
};

/// Guarded convenience wrapper (|ground| <= 12).
std::vector<Partition> enumerate_partitions(int n, int max_ground = 12);

BigInt bell_number(int n);

/// Variable layout of (P_ST^S): one variable per edge of E(S) followed by one
/// variable per full component in K_r \ S. The ground set is R united with
/// the clones of the non-pair components of S.
struct PartitionLp {
    const ComponentCatalog* cat = nullptr;
    std::vector<int> S_nonpair;   // sorted catalog indices
    Instance ground;              // vertices: R-indices then clones; edges = E(S)
    std::vector<int> clone_base;  // per catalog comp
    std::vector<int> comp_vars;   // catalog indices of K_r \ S (non-pairs)

    int num_edge_vars() const { return static_cast<int>(ground.edges.size()); }
    int num_vars() const { return num_edge_vars() + static_cast<int>(comp_vars.size()); }
    const Rat& var_cost(int j) const;

    /// Sparse constraint row for a partition of the ground set.
    struct Row {
        std::vector<std::pair<int, int>> coef;  // (var, coefficient)
        int rhs = 0;
    };
    Row row_for(const Partition& p) const;

    /// Exact left-hand-side evaluation for a (sparse) point.
    Rat lhs(const Partition& p, const std::vector<Rat>& x) const;
};

PartitionLp build_partition_lp(const ComponentCatalog& cat, std::vector<int> S_nonpair);

struct LpResult {
    PartitionLp lp;
    Rat value;
    std::vector<Rat> x;                            // optimal primal point
    std::vector<std::pair<Partition, Rat>> dual;   // positive dual weights
};

/// Exact optimum of (P_ST^S) over all partition constraints of the ground
/// set. Internally rows are activated lazily, but optimality is certified
/// against the full enumeration (feasible primal + feasible dual of equal
/// objective), so the result is the exact LP optimum. Guarded at
/// |ground| <= max_ground.
LpResult solve_partition_lp(const ComponentCatalog& cat, const std::vector<int>& S_nonpair,
                            int max_ground = 12);

/// First violated partition constraint for x, if any (exact scan).
std::optional<Partition> find_violated_partition(const PartitionLp& lp,
                                                 const std::vector<Rat>& x,
                                                 int max_ground = 12);

struct OptResult {
    Rat cost;
    std::vector<Edge> tree;  // instance coordinates
};

/// Minimum-cost Steiner tree by exhausting Steiner vertex subsets; exact.
OptResult brute_force_opt(const Instance& inst, int max_steiner = 16);

struct OptRResult {
    Rat cost;
    std::vector<int> comps;  // catalog indices (pairs included)
};

/// Optimal r-restricted Steiner tree: min-cost sub-collection of the catalog
/// forming a spanning tree of the terminal hypergraph (count-and-connectivity
/// criterion), by subset DP over R.
OptRResult brute_force_opt_r(const ComponentCatalog& cat);

Rat collection_loss(const ComponentCatalog& cat, const std::vector<int>& comps);

/// Builds the graph of exactly the given components (no implicit pairs) and
/// returns its Kruskal dual's Steiner objective sum (sbar(pi)-1) y_pi.
Rat collection_smst(const ComponentCatalog& cat, const std::vector<int>& comps);

/// opt_r / lp_value (S = pairs).
Rat integrality_gap(const ComponentCatalog& cat, int max_ground = 12);

/// The extension of a feasible point of (P_ST^S) to (P_ST^{S u {J}}):
/// x'_e = x_J on E(J), all other coordinates copied.
std::pair<PartitionLp, std::vector<Rat>> extend_primal(const LpResult& base, int J);
std::pair<PartitionLp, std::vector<Rat>> extend_primal(const PartitionLp& lp,
                                                       const std::vector<Rat>& x, int J);

/// For every positive-duration partition in the Kruskal dual of the tree
/// formed by `tstar_comps`: (sbar-1) >= (b+1)/(2b+1) (rank-1).
bool rankdrop_check(const ComponentCatalog& cat, const std::vector<int>& tstar_comps, int b);

}  // namespace steiner
