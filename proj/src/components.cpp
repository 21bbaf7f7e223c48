#include "steiner/components.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>

namespace steiner {

std::pair<std::vector<int>, Rat> subgraph_loss(int n, const std::vector<Edge>& edges,
                                               const std::vector<char>& terminal) {
    // contract all terminals into super-node 0; steiner v -> 1 + position
    std::vector<int> node(n, -1);
    int next = 1;
    for (int v = 0; v < n; ++v) node[v] = terminal[v] ? 0 : next++;
    std::vector<int> order(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return edges[a].cost < edges[b].cost; });
    DisjointSets ds(next);
    std::vector<int> chosen;
    Rat total = 0;
    for (int ei : order) {
        int a = node[edges[ei].u], b = node[edges[ei].v];
        if (a == b) continue;
        if (ds.unite(a, b)) {
            chosen.push_back(ei);
            total += edges[ei].cost;
        }
    }
    for (int v = 0; v < n; ++v)
        STEINER_CHECK(terminal[v] || ds.find(node[v]) == ds.find(0),
                      "loss: steiner vertex cannot reach a terminal");
    std::sort(chosen.begin(), chosen.end());
    return {std::move(chosen), std::move(total)};
}

void component_loss(FullComponent& comp) {
    std::vector<char> term(comp.local_vertex_count(), 0);
    for (int i = 0; i < comp.size(); ++i) term[i] = 1;
    auto [idx, cost] = subgraph_loss(comp.local_vertex_count(), comp.edges, term);
    comp.loss_edges = std::move(idx);
    comp.loss_cost = std::move(cost);
}

namespace {

struct CostMatrix {
    int n;
    std::vector<char> has;
    std::vector<Rat> c;
    explicit CostMatrix(const Instance& g) : n(g.n), has(static_cast<size_t>(g.n) * g.n, 0),
                                             c(static_cast<size_t>(g.n) * g.n) {
        for (const Edge& e : g.edges) {
            size_t a = static_cast<size_t>(e.u) * n + e.v;
            size_t b = static_cast<size_t>(e.v) * n + e.u;
            if (!has[a] || e.cost < c[a]) {
                c[a] = c[b] = e.cost;
                has[a] = has[b] = 1;
            }
        }
    }
    bool edge(int u, int v) const { return has[static_cast<size_t>(u) * n + v] != 0; }
    const Rat& cost(int u, int v) const { return c[static_cast<size_t>(u) * n + v]; }
};

// Dreyfus-Wagner style subset DP adapted so that terminals are leaves only:
// f(v, A) = min cost of a tree rooted at Steiner vertex v whose terminal-leaf
// set is exactly A, with all internal vertices Steiner. Terminals enter only
// through the base case f(v, {t}) = c(vt).
struct ComponentDp {
    const Instance& g;
    CostMatrix cm;
    std::vector<int> terms;    // R-index -> vertex id (ascending)
    std::vector<int> steiner;  // steiner position -> vertex id
    int nR, nS;

    struct Cell {
        Rat val;
        int kind = -1;  // -1 none, 0 base (arg = R-index), 1 split (arg = submask), 2 extend (arg = steiner pos)
        int arg = -1;
    };
    std::vector<uint32_t> masks;          // enumerated masks, ascending
    std::vector<int> mask_slot;           // mask -> slot or -1
    std::vector<std::vector<Cell>> f;     // [slot][steiner pos]
    std::vector<std::vector<Cell>> fidm;  // split-only cells, root candidates

    ComponentDp(const Instance& closed, uint32_t allowed, int max_size)
        : g(closed), cm(closed) {
        terms = closed.terminals();
        for (int v = 0; v < closed.n; ++v)
            if (!closed.terminal[v]) steiner.push_back(v);
        nR = static_cast<int>(terms.size());
        nS = static_cast<int>(steiner.size());

        mask_slot.assign(1u << nR, -1);
        for (uint32_t m = 1; m < (1u << nR); ++m) {
            if ((m & allowed) != m) continue;
            if (std::popcount(m) > max_size) continue;
            mask_slot[m] = static_cast<int>(masks.size());
            masks.push_back(m);
        }
        if (static_cast<long long>(masks.size()) * std::max(nS, 1) > 20'000'000LL)
            throw GuardError("component DP state space too large");
        f.assign(masks.size(), std::vector<Cell>(nS));
        fidm.assign(masks.size(), std::vector<Cell>(nS));
        run();
    }

    void run() {
        // steiner-steiner adjacency for the relaxation phase
        std::vector<std::vector<std::pair<int, Rat>>> sadj(nS);
        std::vector<int> spos(g.n, -1);
        for (int i = 0; i < nS; ++i) spos[steiner[i]] = i;
        for (const Edge& e : g.edges) {
            int a = spos[e.u], b = spos[e.v];
            if (a >= 0 && b >= 0) {
                sadj[a].push_back({b, e.cost});
                sadj[b].push_back({a, e.cost});
            }
        }
        for (size_t slot = 0; slot < masks.size(); ++slot) {
            uint32_t mask = masks[slot];
            int pc = std::popcount(mask);
            auto& row = f[slot];
            auto& splitrow = fidm[slot];
            if (pc == 1) {
                int t = std::countr_zero(mask);
                for (int s = 0; s < nS; ++s)
                    if (cm.edge(steiner[s], terms[t]))
                        row[s] = {cm.cost(steiner[s], terms[t]), 0, t};
            } else {
                uint32_t low = mask & (~mask + 1);
                for (uint32_t b = (mask - 1) & mask; b; b = (b - 1) & mask) {
                    if (!(b & low)) continue;  // canonical half
                    uint32_t rest = mask ^ b;
                    int sb = mask_slot[b], sr = mask_slot[rest];
                    if (sb < 0 || sr < 0) continue;
                    for (int s = 0; s < nS; ++s) {
                        const Cell& cb = f[sb][s];
                        const Cell& cr = f[sr][s];
                        if (cb.kind < 0 || cr.kind < 0) continue;
                        Rat v = cb.val + cr.val;
                        if (splitrow[s].kind < 0 || v < splitrow[s].val)
                            splitrow[s] = {std::move(v), 1, static_cast<int>(b)};
                    }
                }
                for (int s = 0; s < nS; ++s) row[s] = splitrow[s];
            }
            // relaxation over steiner-steiner edges (Dijkstra on this mask)
            using Item = std::pair<Rat, int>;
            auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
            std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
            for (int s = 0; s < nS; ++s)
                if (row[s].kind >= 0) pq.push({row[s].val, s});
            std::vector<char> done(nS, 0);
            while (!pq.empty()) {
                auto [d, s] = pq.top();
                pq.pop();
                if (done[s]) continue;
                if (row[s].kind >= 0 && row[s].val < d) continue;
                done[s] = 1;
                for (auto& [t, c] : sadj[s]) {
                    if (done[t]) continue;
                    Rat nd = d + c;
                    if (row[t].kind < 0 || nd < row[t].val) {
                        row[t] = {nd, 2, s};
                        pq.push({std::move(nd), t});
                    }
                }
            }
        }
    }

    void emit(int s, uint32_t mask, bool as_root, std::vector<std::pair<int, int>>& out) const {
        const Cell& cell = as_root ? fidm[mask_slot[mask]][s] : f[mask_slot[mask]][s];
        STEINER_CHECK(cell.kind >= 0, "reconstruction on empty DP cell");
        switch (cell.kind) {
            case 0: out.push_back({steiner[s], terms[cell.arg]}); break;
            case 1:
                emit(s, static_cast<uint32_t>(cell.arg), false, out);
                emit(s, mask ^ static_cast<uint32_t>(cell.arg), false, out);
                break;
            case 2:
                out.push_back({steiner[s], steiner[cell.arg]});
                emit(cell.arg, mask, false, out);
                break;
        }
    }

    // best full component for `mask` (popcount >= 3): min split-rooted value
    std::optional<std::pair<Rat, int>> best_root(uint32_t mask) const {
        int slot = mask_slot[mask];
        std::optional<std::pair<Rat, int>> best;
        for (int s = 0; s < nS; ++s) {
            const Cell& c = fidm[slot][s];
            if (c.kind < 0) continue;
            if (!best || c.val < best->first) best = {c.val, s};
        }
        return best;
    }
};

// Turns a reconstructed edge multiset into a clean full component tree:
// dedupe, spanning-tree extraction, degree-2 Steiner splicing. The total cost
// must stay exactly the DP optimum; anything else is a bug.
FullComponent finalize_component(const Instance& closed, const std::vector<int>& term_rindex,
                                 const std::vector<int>& term_ids, uint32_t mask, const Rat& dp_cost,
                                 std::vector<std::pair<int, int>> raw_edges) {
    CostMatrix cm(closed);
    std::map<std::pair<int, int>, Rat> eset;
    for (auto [u, v] : raw_edges) {
        auto key = std::minmax(u, v);
        STEINER_CHECK(cm.edge(u, v), "reconstructed edge missing from instance");
        eset.emplace(key, cm.cost(u, v));
    }
    // spanning tree of the deduped subgraph
    std::vector<std::pair<std::pair<int, int>, Rat>> cand(eset.begin(), eset.end());
    std::sort(cand.begin(), cand.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::map<int, int> comp_id;
    auto id_of = [&](int v) {
        auto it = comp_id.find(v);
        if (it == comp_id.end())
            it = comp_id.emplace(v, static_cast<int>(comp_id.size())).first;
        return it->second;
    };
    for (auto& [key, c] : cand) {
        id_of(key.first);
        id_of(key.second);
    }
    DisjointSets ds(static_cast<int>(comp_id.size()));
    std::map<std::pair<int, int>, Rat> tree;
    Rat total = 0;
    for (auto& [key, c] : cand)
        if (ds.unite(id_of(key.first), id_of(key.second))) {
            tree.emplace(key, c);
            total += c;
        }
    STEINER_CHECK(total == dp_cost, "component reconstruction cost mismatch");

    // splice out degree-2 Steiner vertices (metric closure keeps cost equal)
    auto degrees = [&]() {
        std::map<int, std::vector<int>> adj;
        for (auto& [key, c] : tree) {
            adj[key.first].push_back(key.second);
            adj[key.second].push_back(key.first);
        }
        return adj;
    };
    for (;;) {
        auto adj = degrees();
        int victim = -1;
        for (auto& [v, nb] : adj)
            if (!closed.terminal[v] && nb.size() == 2) {
                victim = v;
                break;
            }
        if (victim < 0) break;
        auto& nb = adj[victim];
        int a = nb[0], b = nb[1];
        Rat ca = tree[std::minmax(victim, a)];
        Rat cb = tree[std::minmax(victim, b)];
        tree.erase(std::minmax(victim, a));
        tree.erase(std::minmax(victim, b));
        STEINER_CHECK(cm.edge(a, b), "splice edge missing (instance not metric-closed?)");
        STEINER_CHECK(!(closed.terminal[a] && closed.terminal[b]), "splice would join two leaves");
        STEINER_CHECK(tree.find(std::minmax(a, b)) == tree.end(), "splice found a parallel edge");
        STEINER_CHECK(cm.cost(a, b) == ca + cb, "splice changed the component cost");
        tree.emplace(std::minmax(a, b), cm.cost(a, b));
    }

    // assemble local coordinates: terminals (ascending R-index) then steiner
    FullComponent comp;
    comp.term_mask = mask;
    comp.terms = term_rindex;
    std::vector<int> internals;
    for (auto& [key, c] : tree)
        for (int v : {key.first, key.second})
            if (!closed.terminal[v]) internals.push_back(v);
    std::sort(internals.begin(), internals.end());
    internals.erase(std::unique(internals.begin(), internals.end()), internals.end());
    comp.num_internal = static_cast<int>(internals.size());
    comp.internal_orig.reserve(internals.size());
    for (int v : internals) comp.internal_orig.push_back(closed.origin_of(v));

    std::map<int, int> local;
    for (size_t i = 0; i < term_ids.size(); ++i) local[term_ids[i]] = static_cast<int>(i);
    for (size_t i = 0; i < internals.size(); ++i)
        local[internals[i]] = static_cast<int>(term_ids.size() + i);
    comp.cost = 0;
    for (auto& [key, c] : tree) {
        comp.edges.push_back({local.at(key.first), local.at(key.second), c});
        comp.cost += c;
    }
    STEINER_CHECK(comp.cost == dp_cost, "splicing changed the component cost");
    STEINER_CHECK(static_cast<int>(comp.edges.size()) == comp.local_vertex_count() - 1,
                  "component is not a tree");

    // leaf property: terminals have degree 1, internal steiner degree >= 3
    std::vector<int> deg(comp.local_vertex_count(), 0);
    for (const Edge& e : comp.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int i = 0; i < comp.size(); ++i)
        STEINER_CHECK(deg[i] == 1, "terminal is not a leaf of its component");
    for (int i = comp.size(); i < comp.local_vertex_count(); ++i)
        STEINER_CHECK(deg[i] >= 3, "internal steiner vertex of degree < 3 survived");

    component_loss(comp);
    return comp;
}

}  // namespace

std::optional<FullComponent> min_full_component(const Instance& closed,
                                                const std::vector<int>& K) {
    std::vector<int> terms = closed.terminals();
    std::vector<int> rindex_of(closed.n, -1);
    for (size_t i = 0; i < terms.size(); ++i) rindex_of[terms[i]] = static_cast<int>(i);
    uint32_t mask = 0;
    for (int v : K) {
        STEINER_CHECK(v >= 0 && v < closed.n && closed.terminal[v], "K must consist of terminals");
        mask |= 1u << rindex_of[v];
    }
    int k = std::popcount(mask);
    STEINER_CHECK(k == static_cast<int>(K.size()) && k >= 2, "K must be >= 2 distinct terminals");

    std::vector<int> term_rindex, term_ids;
    for (size_t i = 0; i < terms.size(); ++i)
        if (mask & (1u << i)) {
            term_rindex.push_back(static_cast<int>(i));
            term_ids.push_back(terms[i]);
        }

    if (k == 2) {
        CostMatrix cm(closed);
        if (!cm.edge(term_ids[0], term_ids[1])) return std::nullopt;
        FullComponent comp;
        comp.terms = term_rindex;
        comp.term_mask = mask;
        comp.num_internal = 0;
        comp.edges.push_back({0, 1, cm.cost(term_ids[0], term_ids[1])});
        comp.cost = comp.edges[0].cost;
        comp.loss_cost = 0;
        return comp;
    }

    ComponentDp dp(closed, mask, k);
    auto best = dp.best_root(mask);
    if (!best) return std::nullopt;
    std::vector<std::pair<int, int>> raw;
    dp.emit(best->second, mask, true, raw);
    return finalize_component(closed, term_rindex, term_ids, mask, best->first, std::move(raw));
}

ComponentCatalog build_catalog(const Instance& closed, int r) {
    if (r < 2) throw ParseError("r must be at least 2");
    ComponentCatalog cat;
    cat.closed = closed;
    cat.term_vertex = closed.terminals();
    int nR = static_cast<int>(cat.term_vertex.size());
    if (nR > 20) throw GuardError("catalog builder requires |R| <= 20 (got " +
                                  std::to_string(nR) + ")");
    if (nR < 2) throw ParseError("catalog needs at least 2 terminals");
    cat.r = std::min(r, nR);
    cat.rindex.assign(closed.n, -1);
    for (int i = 0; i < nR; ++i) cat.rindex[cat.term_vertex[i]] = i;

    ComponentDp dp(closed, (nR == 32 ? ~0u : (1u << nR) - 1), cat.r);
    CostMatrix cm(closed);

    // enumerate masks by (popcount, numeric value)
    std::vector<uint32_t> order;
    for (int size = 2; size <= cat.r; ++size)
        for (uint32_t m = 1; m < (1u << nR); ++m)
            if (std::popcount(m) == size) order.push_back(m);

    cat.pair_comp.assign(static_cast<size_t>(nR) * nR, -1);
    for (uint32_t mask : order) {
        std::vector<int> term_rindex, term_ids;
        for (int i = 0; i < nR; ++i)
            if (mask & (1u << i)) {
                term_rindex.push_back(i);
                term_ids.push_back(cat.term_vertex[i]);
            }
        if (term_rindex.size() == 2) {
            if (!cm.edge(term_ids[0], term_ids[1])) continue;  // not metric-closed input
            FullComponent comp;
            comp.terms = term_rindex;
            comp.term_mask = mask;
            comp.edges.push_back({0, 1, cm.cost(term_ids[0], term_ids[1])});
            comp.cost = comp.edges[0].cost;
            comp.loss_cost = 0;
            int idx = static_cast<int>(cat.comps.size());
            cat.pair_comp[static_cast<size_t>(term_rindex[0]) * nR + term_rindex[1]] = idx;
            cat.pair_comp[static_cast<size_t>(term_rindex[1]) * nR + term_rindex[0]] = idx;
            cat.comps.push_back(std::move(comp));
        } else {
            auto best = dp.best_root(mask);
            if (!best) continue;
            std::vector<std::pair<int, int>> raw;
            dp.emit(best->second, mask, true, raw);
            cat.comps.push_back(
                finalize_component(closed, term_rindex, term_ids, mask, best->first, std::move(raw)));
        }
    }

    // working graph: terminals get R-indices, every component fresh clones
    Instance& wg = cat.working_graph;
    wg.n = nR;
    wg.terminal.assign(nR, 1);
    wg.clone_of.clear();
    for (int i = 0; i < nR; ++i) wg.clone_of.push_back(closed.origin_of(cat.term_vertex[i]));
    cat.clone_base.assign(cat.comps.size(), -1);
    for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
        const FullComponent& comp = cat.comps[ci];
        if (comp.is_pair()) {
            wg.edges.push_back({comp.terms[0], comp.terms[1], comp.cost});
            continue;
        }
        cat.clone_base[ci] = wg.n;
        for (int j = 0; j < comp.num_internal; ++j) {
            wg.terminal.push_back(0);
            wg.clone_of.push_back(comp.internal_orig[j]);
            ++wg.n;
        }
        for (const Edge& e : comp.edges) {
            auto map_local = [&](int x) {
                return x < comp.size() ? comp.terms[x] : cat.clone_base[ci] + (x - comp.size());
            };
            wg.edges.push_back({map_local(e.u), map_local(e.v), e.cost});
        }
    }
    wg.validate();
    return cat;
}

}  // namespace steiner
