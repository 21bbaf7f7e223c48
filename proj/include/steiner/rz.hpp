#pragma once

#include "steiner/mst_dual.hpp"

#include <optional>
#include <string>
#include <vector>

namespace steiner {

struct IterationRecord {
    int comp = -1;                    // catalog index
    std::vector<int> comp_terminals;  // original instance vertex ids
    Rat f;                            // selection value, always < 1
    Rat mst, smst, loss;              // state values after adding the component
};

struct RunReport {
    std::string digest;
    int n = 0, num_terminals = 0, r = 2, b = 0;
    bool trivial = false;  // |R| <= 1 shortcut, nothing to solve
    Rat initial_mst, initial_smst;  // mst(G[R]) of the closed instance
    std::vector<IterationRecord> iterations;
    Rat final_cost;    // c(T^p) in the working graph
    Rat lower_bound;   // smst^p, the dual lower bound on opt_r
    std::vector<std::pair<int, int>> tree_edges;  // original coords, pruned
    Rat pruned_cost;

    // oracle attachments (optional)
    std::optional<Rat> oracle_opt;
    std::optional<Rat> oracle_opt_r;
    std::optional<Rat> oracle_tstar_loss;
    std::optional<Rat> lp_pairs;
    std::optional<Rat> ratio;  // final_cost / opt_r
    std::optional<Rat> theorem_bound;
    std::optional<bool> bound_satisfied;
};

/// Algorithm: start from S = all terminal pairs; repeatedly add the violated
/// full component minimizing the selection value f, until the Kruskal dual is
/// feasible for the component constraints. Exposes the catalog when a
/// non-null out-pointer is given (|R| >= 2 only).
RunReport rz_solve(const Instance& inst, int r, ComponentCatalog* cat_out = nullptr);

/// Performance bound for b-quasi-bipartite inputs: 1.279 for b = 1,
/// 1 + 1/e for b in {2,3,4}, 1 + ln(3 - 2/b)/2 for b >= 5 (transcendentals
/// rounded up at 12 decimal digits; b = 0 means no Steiner vertices and the
/// bound is 1).
Rat theorem_main_bound(int b);

/// (bound, final_cost <= bound * opt_r). Throws MissingOracleError when the
/// report carries no oracle_opt_r.
std::pair<Rat, bool> certify_ratio(const RunReport& report, int b);

struct TpcostResult {
    bool bound_holds = false;   // final <= opt_r + l* ln(1 + (mst(G[R]) - opt_r)/l*)
    bool kz_premise = false;    // l* <= opt_r / 2
};
TpcostResult tpcost_bound_check(const RunReport& report, const Rat& opt_r,
                                const Rat& tstar_loss);

}  // namespace steiner
