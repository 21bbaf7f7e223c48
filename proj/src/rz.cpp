#include "steiner/rz.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace steiner {

namespace {

int state_vertex_origin(const ComponentCatalog& cat, const CollectionState& s, int v) {
    if (v < cat.num_terminals()) return cat.closed.origin_of(cat.term_vertex[v]);
    for (int ci : s.selected) {
        int base = s.clone_base[ci];
        int cnt = cat.comps[ci].num_internal;
        if (v >= base && v < base + cnt) return cat.comps[ci].internal_orig[v - base];
    }
    throw InternalError("state vertex outside every clone range");
}

// map the working-graph tree back through clone_of, dedupe, re-extract a
// spanning tree and prune Steiner leaves; never increases cost
std::pair<std::vector<std::pair<int, int>>, Rat> map_back(const ComponentCatalog& cat,
                                                          const CollectionState& s) {
    std::map<std::pair<int, int>, Rat> mapped;
    for (int ei : s.mst.tree_edges) {
        const Edge& e = s.graph.edges[ei];
        int a = state_vertex_origin(cat, s, e.u);
        int b = state_vertex_origin(cat, s, e.v);
        STEINER_CHECK(a != b, "clone mapping produced a self-loop");
        mapped.emplace(std::minmax(a, b), e.cost);
    }
    // spanning tree of the mapped subgraph
    std::vector<std::pair<std::pair<int, int>, Rat>> cand(mapped.begin(), mapped.end());
    std::stable_sort(cand.begin(), cand.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    std::map<int, int> id;
    for (auto& [key, c] : cand) {
        id.emplace(key.first, static_cast<int>(id.size()));
        id.emplace(key.second, static_cast<int>(id.size()));
    }
    DisjointSets ds(static_cast<int>(id.size()));
    std::map<std::pair<int, int>, Rat> tree;
    for (auto& [key, c] : cand)
        if (ds.unite(id.at(key.first), id.at(key.second))) tree.emplace(key, c);

    const Instance& orig = cat.closed;
    for (;;) {
        std::map<int, int> deg;
        for (auto& [key, c] : tree) {
            ++deg[key.first];
            ++deg[key.second];
        }
        int victim = -1;
        for (auto& [v, d] : deg)
            if (d == 1 && !orig.terminal[v]) victim = v;
        if (victim < 0) break;
        for (auto it = tree.begin(); it != tree.end(); ++it)
            if (it->first.first == victim || it->first.second == victim) {
                tree.erase(it);
                break;
            }
    }
    std::vector<std::pair<int, int>> edges;
    Rat cost = 0;
    for (auto& [key, c] : tree) {
        edges.push_back(key);
        cost += c;
    }
    return {std::move(edges), std::move(cost)};
}

}  // namespace

RunReport rz_solve(const Instance& inst, int r, ComponentCatalog* cat_out) {
    inst.validate();
    if (r < 2) throw ParseError("r must be at least 2");
    RunReport rep;
    rep.n = inst.n;
    rep.num_terminals = inst.num_terminals();
    rep.digest = instance_digest(inst);
    rep.b = quasi_bipartite_bound(inst);
    rep.r = std::min(r, std::max(rep.num_terminals, 2));

    if (rep.num_terminals == 0) throw ParseError("instance has no terminals");
    if (rep.num_terminals == 1) {
        // a single terminal is itself a Steiner tree of cost 0
        rep.trivial = true;
        rep.final_cost = rep.pruned_cost = rep.lower_bound = 0;
        rep.initial_mst = rep.initial_smst = 0;
        return rep;
    }

    Instance closed = metric_closure(inst);
    ComponentCatalog cat = build_catalog(closed, rep.r);
    CollectionState state = initial_state(cat);
    rep.initial_mst = state.mst_cost;
    rep.initial_smst = state.smst_value;

    size_t max_iter = cat.comps.size();
    for (size_t iter = 0; iter <= max_iter; ++iter) {
        int best = -1;
        Rat best_f;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
            if (state.in_collection[ci]) continue;
            Rat load = state_dual_load(state, static_cast<int>(ci));
            const Rat& c = cat.comps[ci].cost;
            if (!(load > c)) continue;  // not violated
            Rat f = cat.comps[ci].loss_cost / (load - c + cat.comps[ci].loss_cost);
            if (best < 0 || f < best_f) {
                best = static_cast<int>(ci);
                best_f = std::move(f);
            }
        }
        if (best < 0) break;  // dual feasible for every remaining component
        STEINER_CHECK(iter < max_iter, "more iterations than components");
        STEINER_CHECK(best_f < 1, "selected component with f >= 1");
        state = add_component(state, best);
        IterationRecord it;
        it.comp = best;
        for (int t : cat.comps[best].terms)
            it.comp_terminals.push_back(closed.origin_of(cat.term_vertex[t]));
        it.f = best_f;
        it.mst = state.mst_cost;
        it.smst = state.smst_value;
        it.loss = state.loss_cost;
        rep.iterations.push_back(std::move(it));
    }

    // final dual feasibility, re-verified through the timeline integral
    for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
        if (state.in_collection[ci]) continue;
        std::vector<int> kv(cat.comps[ci].terms.begin(), cat.comps[ci].terms.end());
        STEINER_CHECK(dual_load(state.mst.timeline, kv) <= cat.comps[ci].cost,
                      "violated component after termination");
    }

    rep.final_cost = state.mst_cost;
    rep.lower_bound = state.smst_value;
    auto [edges, pruned] = map_back(cat, state);
    rep.tree_edges = std::move(edges);
    rep.pruned_cost = std::move(pruned);
    STEINER_CHECK(rep.pruned_cost <= rep.final_cost, "clean-up increased the tree cost");
    if (cat_out) *cat_out = std::move(cat);
    return rep;
}

namespace {

HighFloat to_high(const Rat& q) {
    return HighFloat(numerator(q).str()) / HighFloat(denominator(q).str());
}

}  // namespace

Rat theorem_main_bound(int b) {
    if (b <= 0) return Rat(1);
    if (b == 1) return Rat(1279, 1000);
    if (b <= 4) {
        HighFloat v = 1 + 1 / exp(HighFloat(1));
        return round_up_at_digits(v, 12);
    }
    HighFloat v = 1 + log(HighFloat(3) - HighFloat(2) / b) / 2;
    return round_up_at_digits(v, 12);
}

std::pair<Rat, bool> certify_ratio(const RunReport& report, int b) {
    Rat bound = theorem_main_bound(b);
    if (!report.oracle_opt_r)
        throw MissingOracleError("certify_ratio needs the oracle opt_r");
    bool ok = report.final_cost <= bound * *report.oracle_opt_r;
    return {std::move(bound), ok};
}

TpcostResult tpcost_bound_check(const RunReport& report, const Rat& opt_r,
                                const Rat& tstar_loss) {
    TpcostResult res;
    res.kz_premise = (tstar_loss * 2 <= opt_r);
    Rat delta = report.initial_mst - opt_r;
    STEINER_CHECK(delta >= 0, "mst(G[R]) below opt_r");
    if (tstar_loss == 0 || delta == 0) {
        res.bound_holds = (report.final_cost <= opt_r);
        return res;
    }
    // rhs = opt_r + l* ln(1 + delta/l*); the log of a rational > 1 is
    // irrational, so a high-precision comparison cannot sit on a tie
    HighFloat rhs = to_high(opt_r) + to_high(tstar_loss) * log(1 + to_high(delta) / to_high(tstar_loss));
    res.bound_holds = (to_high(report.final_cost) <= rhs);
    return res;
}

}  // namespace steiner
