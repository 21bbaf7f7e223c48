#include "steiner/mst_dual.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace steiner {

int Partition::rank() const {
    std::set<int> labels(block_of.begin(), block_of.end());
    return static_cast<int>(labels.size());
}

int steiner_rank(const Partition& p, const std::vector<char>& terminal) {
    std::set<int> labels;
    for (size_t v = 0; v < p.block_of.size(); ++v)
        if (terminal[v]) labels.insert(p.block_of[v]);
    return static_cast<int>(labels.size());
}

int rank_contribution(const Partition& p, const std::vector<int>& k_vertices) {
    std::set<int> labels;
    for (int v : k_vertices) labels.insert(p.block_of[v]);
    return static_cast<int>(labels.size()) - 1;
}

namespace {

std::vector<int> edge_order(const Instance& g) {
    std::vector<int> order(g.edges.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.edges[a].cost < g.edges[b].cost;  // stable: index tie-break
    });
    return order;
}

}  // namespace

KruskalResult kruskal_dual(const Instance& g) {
    KruskalResult res;
    res.cost = 0;
    DisjointSets ds(g.n);
    std::vector<int> block(g.n);
    for (int v = 0; v < g.n; ++v) block[v] = v;

    auto snapshot = [&](const Rat& start) {
        TimelineEvent ev;
        ev.start = start;
        ev.y = 0;
        ev.partition.block_of = block;
        ev.rank = ds.classes;
        int sbar = 0;
        std::set<int> seen;
        for (int v = 0; v < g.n; ++v)
            if (g.terminal[v] && seen.insert(block[v]).second) ++sbar;
        ev.sbar = sbar;
        res.timeline.events.push_back(std::move(ev));
    };

    snapshot(Rat(0));
    for (int ei : edge_order(g)) {
        const Edge& e = g.edges[ei];
        if (ds.find(e.u) == ds.find(e.v)) continue;
        // close the current epoch at this merge time
        TimelineEvent& cur = res.timeline.events.back();
        cur.y = e.cost - cur.start;
        res.tree_edges.push_back(ei);
        res.cost += e.cost;
        ds.unite(e.u, e.v);
        int target = block[e.u];
        int from = block[e.v];
        for (int v = 0; v < g.n; ++v)
            if (block[v] == from) block[v] = target;
        snapshot(e.cost);
        if (ds.classes == 1) break;
    }
    if (ds.classes != 1) throw DisconnectedError("kruskal_dual: graph is disconnected");
    res.timeline.total_time = res.timeline.events.back().start;
    return res;
}

Rat kruskal_forest_cost(const Instance& g) {
    DisjointSets ds(g.n);
    Rat cost = 0;
    for (int ei : edge_order(g))
        if (ds.unite(g.edges[ei].u, g.edges[ei].v)) cost += g.edges[ei].cost;
    return cost;
}

std::vector<std::vector<Rat>> bottleneck_matrix(const Instance& g,
                                                const std::vector<int>& tree_edges,
                                                const std::vector<int>& verts) {
    std::vector<std::vector<std::pair<int, Rat>>> adj(g.n);
    for (int ei : tree_edges) {
        const Edge& e = g.edges[ei];
        adj[e.u].push_back({e.v, e.cost});
        adj[e.v].push_back({e.u, e.cost});
    }
    size_t k = verts.size();
    std::vector<std::vector<Rat>> bn(k, std::vector<Rat>(k, Rat(0)));
    std::vector<int> pos(g.n, -1);
    for (size_t i = 0; i < k; ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<char> seen(g.n);
    std::vector<Rat> best(g.n);
    for (size_t i = 0; i < k; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        // DFS from verts[i], tracking the max edge cost on the path
        std::vector<int> stack{verts[i]};
        best[verts[i]] = 0;
        seen[verts[i]] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (pos[v] >= 0) bn[i][pos[v]] = best[v];
            for (auto& [w, c] : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    best[w] = std::max(best[v], c);
                    stack.push_back(w);
                }
        }
    }
    return bn;
}

Rat dual_load(const DualTimeline& tl, const std::vector<int>& k_vertices) {
    Rat total = 0;
    for (const TimelineEvent& ev : tl.events) {
        if (ev.y == 0) continue;
        total += Rat(rank_contribution(ev.partition, k_vertices)) * ev.y;
    }
    return total;
}

namespace {

void build_graph(const ComponentCatalog& cat, const std::vector<int>& selected,
                 Instance& g, std::vector<int>& clone_base) {
    int nR = cat.num_terminals();
    g = Instance{};
    g.n = nR;
    g.terminal.assign(nR, 1);
    clone_base.assign(cat.comps.size(), -1);
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (cat.comps[ci].is_pair())
            g.edges.push_back({cat.comps[ci].terms[0], cat.comps[ci].terms[1],
                               cat.comps[ci].cost});
    for (int ci : selected) {
        const FullComponent& comp = cat.comps[ci];
        clone_base[ci] = g.n;
        g.n += comp.num_internal;
        g.terminal.resize(g.n, 0);
        for (const Edge& e : comp.edges) {
            auto map_local = [&](int x) {
                return x < comp.size() ? comp.terms[x] : clone_base[ci] + (x - comp.size());
            };
            g.edges.push_back({map_local(e.u), map_local(e.v), e.cost});
        }
    }
}

}  // namespace

CollectionState make_state(const ComponentCatalog& cat, const std::vector<int>& selected) {
    CollectionState s;
    s.cat = &cat;
    s.selected = selected;
    std::sort(s.selected.begin(), s.selected.end());
    s.in_collection.assign(cat.comps.size(), 0);
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (cat.comps[ci].is_pair()) s.in_collection[ci] = 1;
    for (int ci : s.selected) {
        STEINER_CHECK(!cat.comps[ci].is_pair(), "pairs are always in the collection");
        s.in_collection[ci] = 1;
    }
    build_graph(cat, s.selected, s.graph, s.clone_base);
    s.mst = kruskal_dual(s.graph);
    s.mst_cost = s.mst.cost;
    s.loss_cost = 0;
    for (int ci : s.selected) s.loss_cost += cat.comps[ci].loss_cost;
    s.smst_value = 0;
    for (const TimelineEvent& ev : s.mst.timeline.events)
        s.smst_value += Rat(ev.sbar - 1) * ev.y;
    // mst = smst + loss must hold exactly (the identity the whole analysis
    // leans on); a mismatch indicates a bug, never a data problem
    STEINER_CHECK(s.mst_cost == s.smst_value + s.loss_cost, "mst != smst + loss");
    std::vector<int> terms(cat.num_terminals());
    for (size_t i = 0; i < terms.size(); ++i) terms[i] = static_cast<int>(i);
    s.bn = bottleneck_matrix(s.graph, s.mst.tree_edges, terms);
    return s;
}

CollectionState initial_state(const ComponentCatalog& cat) { return make_state(cat, {}); }

Rat state_dual_load(const CollectionState& s, int comp_index) {
    const FullComponent& comp = s.cat->comps[comp_index];
    // Prim over the complete graph on K's terminals under bottleneck distances
    const auto& terms = comp.terms;
    size_t k = terms.size();
    std::vector<char> used(k, 0);
    std::vector<Rat> key(k);
    used[0] = 1;
    for (size_t i = 1; i < k; ++i) key[i] = s.bn[terms[0]][terms[i]];
    Rat total = 0;
    for (size_t it = 1; it < k; ++it) {
        int best = -1;
        for (size_t i = 0; i < k; ++i)
            if (!used[i] && (best < 0 || key[i] < key[best])) best = static_cast<int>(i);
        used[best] = 1;
        total += key[best];
        for (size_t i = 0; i < k; ++i)
            if (!used[i] && s.bn[terms[best]][terms[i]] < key[i])
                key[i] = s.bn[terms[best]][terms[i]];
    }
#ifndef NDEBUG
    {
        std::vector<int> kv(terms.begin(), terms.end());
        STEINER_CHECK(dual_load(s.mst.timeline, kv) == total,
                      "timeline and bottleneck dual loads disagree");
    }
#endif
    return total;
}

bool is_violated(const CollectionState& s, int comp_index) {
    STEINER_CHECK(!s.in_collection[comp_index], "component already in the collection");
    return state_dual_load(s, comp_index) > s.cat->comps[comp_index].cost;
}

CollectionState add_component(const CollectionState& s, int comp_index) {
    STEINER_CHECK(!s.in_collection[comp_index], "component already in the collection");
    bool violated = is_violated(s, comp_index);
    Rat load = state_dual_load(s, comp_index);
    std::vector<int> sel = s.selected;
    sel.push_back(comp_index);
    CollectionState next = make_state(*s.cat, sel);
    if (violated) {
        STEINER_CHECK(next.mst_cost < s.mst_cost, "violated component did not cheapen the MST");
#ifndef NDEBUG
        STEINER_CHECK(next.mst_cost == s.mst_cost + s.cat->comps[comp_index].cost - load,
                      "swap identity failed for a violated component");
#endif
    }
    return next;
}

std::optional<Rat> selection_value(const CollectionState& s, int comp_index) {
    const FullComponent& comp = s.cat->comps[comp_index];
    STEINER_CHECK(!s.in_collection[comp_index], "component already in the collection");
    Rat load = state_dual_load(s, comp_index);
    Rat denom;
    if (load > comp.cost) {
        // violated: mst(S u K) = mst(S) + c_K - load, so the smst drop is
        // load - c_K + loss(K)
        denom = load - comp.cost + comp.loss_cost;
#ifndef NDEBUG
        {
            std::vector<int> sel = s.selected;
            sel.push_back(comp_index);
            CollectionState next = make_state(*s.cat, sel);
            STEINER_CHECK(denom == s.smst_value - next.smst_value,
                          "selection_value shortcut disagrees with recompute");
        }
#endif
    } else {
        std::vector<int> sel = s.selected;
        sel.push_back(comp_index);
        CollectionState next = make_state(*s.cat, sel);
        denom = s.smst_value - next.smst_value;
    }
    if (denom <= 0) return std::nullopt;  // +infinity (includes the 0/0 case)
    return comp.loss_cost / denom;
}

}  // namespace steiner
