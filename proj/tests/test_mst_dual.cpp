#include "steiner/generate.hpp"
#include "steiner/mst_dual.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <bit>
#include <random>
#include <set>

using namespace steiner;

namespace {

Rat dual_objective(const KruskalResult& kr) {
    Rat s = 0;
    for (const TimelineEvent& ev : kr.timeline.events) s += Rat(ev.rank - 1) * ev.y;
    return s;
}

Rat timeline_smst(const KruskalResult& kr) {
    Rat s = 0;
    for (const TimelineEvent& ev : kr.timeline.events) s += Rat(ev.sbar - 1) * ev.y;
    return s;
}

}  // namespace

TEST_CASE("kruskal dual on the triangle") {
    KruskalResult kr = kruskal_dual(fixtures::triangle());
    CHECK(kr.cost == Rat(3));
    REQUIRE(kr.tree_edges.size() == 2);
    // rank-3 partition active for duration 1, rank-2 for duration 1
    std::vector<std::pair<int, Rat>> positive;
    for (const TimelineEvent& ev : kr.timeline.events)
        if (ev.y > 0) positive.push_back({ev.rank, ev.y});
    REQUIRE(positive.size() == 2);
    CHECK(positive[0] == std::pair<int, Rat>{3, Rat(1)});
    CHECK(positive[1] == std::pair<int, Rat>{2, Rat(1)});
    CHECK(dual_objective(kr) == Rat(3));
    CHECK(*oracles::prim_mst(fixtures::triangle()) == Rat(3));
}

TEST_CASE("kruskal dual on PATH2: dual = 1 * 5") {
    KruskalResult kr = kruskal_dual(fixtures::path2());
    CHECK(kr.cost == Rat(5));
    CHECK(dual_objective(kr) == Rat(5));
    CHECK(kr.timeline.total_time == Rat(5));
}

TEST_CASE("kruskal dual with ties: STAR3 restricted to terminals") {
    Instance c = metric_closure(fixtures::star3());
    Instance gr = induced_subgraph(c, c.terminals());
    KruskalResult kr = kruskal_dual(gr);
    CHECK(kr.cost == Rat(4));
    // both tree edges become tight at tau = 2; the middle partition has y = 0
    Rat with_y = 0;
    int zero_events = 0;
    for (const TimelineEvent& ev : kr.timeline.events) {
        if (ev.y == 0 && ev.rank > 1) ++zero_events;
        with_y += Rat(ev.rank - 1) * ev.y;
    }
    CHECK(with_y == Rat(4));
    CHECK(zero_events == 1);
}

TEST_CASE("kruskal dual rejects disconnected graphs") {
    Instance g;
    g.n = 3;
    g.terminal = {1, 1, 1};
    g.edges = {{0, 1, Rat(1)}};
    CHECK_THROWS_AS(kruskal_dual(g), DisconnectedError);
}

TEST_CASE("strong duality on random connected graphs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        Instance g = oracles::random_connected(rng, 3 + static_cast<int>(rng() % 12),
                                               static_cast<int>(rng() % 14),
                                               2 + static_cast<int>(rng() % 3));
        KruskalResult kr = kruskal_dual(g);
        CHECK(kr.cost == dual_objective(kr));
        CHECK(kr.cost == *oracles::prim_mst(g));
        // complementary slackness: each tree edge is paid for exactly
        for (int ei : kr.tree_edges) {
            const Edge& e = g.edges[ei];
            Rat covered = 0;
            for (const TimelineEvent& ev : kr.timeline.events)
                if (ev.partition.block_of[e.u] != ev.partition.block_of[e.v]) covered += ev.y;
            CHECK(covered == e.cost);
        }
    }
}

TEST_CASE("steiner rank") {
    std::vector<char> term{0, 1, 1, 1};  // STAR3 layout
    Partition singles{{0, 1, 2, 3}};
    CHECK(steiner_rank(singles, term) == 3);
    Partition one{{0, 0, 0, 0}};
    CHECK(steiner_rank(one, term) == 1);
    Partition steiner_apart{{0, 1, 1, 1}};
    CHECK(steiner_rank(steiner_apart, term) == 1);
    CHECK(singles.rank() == 4);
}

TEST_CASE("rank contribution") {
    Partition singles{{0, 1, 2}};
    CHECK(rank_contribution(singles, {0, 1, 2}) == 2);
    Partition one{{0, 0, 0}};
    CHECK(rank_contribution(one, {0, 1, 2}) == 0);
    // Skutella: apex block plus 7 singleton terminal blocks; a 5-terminal
    // component meets the apex block and its 4 point blocks
    Partition sk{{1, 2, 3, 4, 5, 6, 7, 0}};  // ground = 8 terminals, apex last
    CHECK(rank_contribution(sk, {0, 1, 2, 3, 7}) == 4);
}

TEST_CASE("bottleneck matrix") {
    SUBCASE("PATH2") {
        Instance g = fixtures::path2();
        auto bn = bottleneck_matrix(g, {0}, {0, 1});
        CHECK(bn[0][1] == Rat(5));
    }
    SUBCASE("triangle tree {ab, bc}") {
        Instance g = fixtures::triangle();
        auto bn = bottleneck_matrix(g, {0, 1}, {0, 1, 2});
        CHECK(bn[0][2] == Rat(2));  // max over path a-b-c
        CHECK(bn[0][1] == Rat(1));
    }
    SUBCASE("STAR3 restricted: all pairs 2") {
        Instance c = metric_closure(fixtures::star3());
        Instance gr = induced_subgraph(c, c.terminals());
        KruskalResult kr = kruskal_dual(gr);
        auto bn = bottleneck_matrix(gr, kr.tree_edges, {0, 1, 2});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(bn[i][j] == (i == j ? Rat(0) : Rat(2)));
    }
}

TEST_CASE("dual load: timeline integral equals bottleneck MST") {
    Instance c = metric_closure(fixtures::star3());
    ComponentCatalog cat = build_catalog(c, 3);
    CollectionState st = initial_state(cat);
    int triple = -1;
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (!cat.comps[ci].is_pair()) triple = static_cast<int>(ci);
    REQUIRE(triple >= 0);
    CHECK(state_dual_load(st, triple) == Rat(4));  // 2 + 2
    std::vector<int> kv{0, 1, 2};
    CHECK(dual_load(st.mst.timeline, kv) == Rat(4));

    SUBCASE("degenerate all-zero-cost graph loads nothing") {
        Instance z;
        z.n = 3;
        z.terminal = {1, 1, 1};
        z.edges = {{0, 1, Rat(0)}, {1, 2, Rat(0)}};
        KruskalResult kr = kruskal_dual(z);
        CHECK(dual_load(kr.timeline, {0, 2}) == Rat(0));
    }
    SUBCASE("triangle bottleneck load for {a, c}") {
        KruskalResult kr = kruskal_dual(fixtures::triangle());
        CHECK(dual_load(kr.timeline, {0, 2}) == Rat(2));
    }
}

TEST_CASE("violation and component addition on STAR3") {
    Instance c = metric_closure(fixtures::star3());
    ComponentCatalog cat = build_catalog(c, 3);
    CollectionState st = initial_state(cat);
    int triple = 3;
    REQUIRE(!cat.comps[triple].is_pair());
    CHECK(is_violated(st, triple));  // 4 > 3
    auto f = selection_value(st, triple);
    REQUIRE(f);
    CHECK(*f == Rat(1, 2));
    CollectionState st2 = add_component(st, triple);
    CHECK(st2.mst_cost == Rat(3));
    CHECK(st2.loss_cost == Rat(1));
    CHECK(st2.smst_value == Rat(2));
}

TEST_CASE("Skutella: five-terminal components are violated initially") {
    Instance c = metric_closure(generate_skutella());
    ComponentCatalog cat = build_catalog(c, 5);
    CollectionState st = initial_state(cat);
    CHECK(st.mst_cost == Rat(14));  // 7 pair edges of cost 2
    for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
        const FullComponent& comp = cat.comps[ci];
        if (comp.size() == 5 && comp.cost == Rat(5)) {
            CHECK(state_dual_load(st, static_cast<int>(ci)) == Rat(8));
            CHECK(is_violated(st, static_cast<int>(ci)));
        }
    }
}

TEST_CASE("no two 5-terminal components cover all 8 Skutella terminals") {
    // two Fano lines always miss exactly two common points, so a pair of
    // cheap quintuples covers at most 7 terminals; the optimum needs three
    // components
    Instance c = metric_closure(generate_skutella());
    ComponentCatalog cat = build_catalog(c, 5);
    std::vector<uint32_t> quints;
    for (const FullComponent& comp : cat.comps)
        if (comp.size() == 5 && comp.cost == Rat(5)) quints.push_back(comp.term_mask);
    for (size_t i = 0; i < quints.size(); ++i)
        for (size_t j = i + 1; j < quints.size(); ++j)
            CHECK(std::popcount(quints[i] | quints[j]) < 8);
}

TEST_CASE("a collection realizing the Skutella optimum has mst 10") {
    Instance c = metric_closure(generate_skutella());
    ComponentCatalog cat = build_catalog(c, 5);
    // cheapest quintuple, a cost-3 triple attached to it, remaining point
    // joined by a pair edge: kruskal over the collection graph reaches the
    // optimal integral value 10
    int quint = -1;
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (cat.comps[ci].size() == 5 && cat.comps[ci].cost == Rat(5)) {
            quint = static_cast<int>(ci);
            break;
        }
    REQUIRE(quint >= 0);
    uint32_t qmask = cat.comps[quint].term_mask;
    int triple = -1;
    for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
        const FullComponent& comp = cat.comps[ci];
        if (comp.size() != 3 || comp.cost != Rat(3)) continue;
        if (std::popcount(comp.term_mask & qmask) == 1 &&
            std::popcount(static_cast<uint32_t>(comp.term_mask & ~qmask & 0x7f)) == 2) {
            triple = static_cast<int>(ci);
            break;
        }
    }
    REQUIRE(triple >= 0);
    CollectionState st = make_state(cat, {quint, triple});
    CHECK(st.mst_cost == Rat(10));
}

TEST_CASE("selection value conventions") {
    SUBCASE("zero-loss component with positive denominator gives f = 0") {
        // zero-cost star: the triple costs 0 with loss 0 but still shrinks smst
        Instance g;
        g.n = 4;
        g.terminal = {0, 1, 1, 1};
        g.edges = {{0, 1, Rat(0)}, {0, 2, Rat(0)}, {0, 3, Rat(2)}};
        Instance c = metric_closure(g);
        ComponentCatalog cat = build_catalog(c, 3);
        CollectionState st = initial_state(cat);
        for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
            if (cat.comps[ci].is_pair() || !is_violated(st, static_cast<int>(ci))) continue;
            if (cat.comps[ci].loss_cost == 0) {
                auto f = selection_value(st, static_cast<int>(ci));
                REQUIRE(f);
                CHECK(*f == Rat(0));
            }
        }
    }
    SUBCASE("non-improving component gets +infinity") {
        // expensive Steiner star next to cheap direct edges
        Instance g;
        g.n = 4;
        g.terminal = {0, 1, 1, 1};
        g.edges = {{0, 1, Rat(5)}, {0, 2, Rat(5)}, {0, 3, Rat(5)},
                   {1, 2, Rat(1)}, {1, 3, Rat(1)}, {2, 3, Rat(1)}};
        ComponentCatalog cat = build_catalog(metric_closure(g), 3);
        CollectionState st = initial_state(cat);
        for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
            if (cat.comps[ci].is_pair()) continue;
            CHECK(!is_violated(st, static_cast<int>(ci)));
            CHECK(!selection_value(st, static_cast<int>(ci)));
        }
    }
}

TEST_CASE("violation implies strict improvement and the swap identity") {
    std::mt19937_64 rng(17);
    int violated_seen = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Instance g = oracles::random_connected(rng, 6 + static_cast<int>(rng() % 4),
                                               static_cast<int>(rng() % 8),
                                               3 + static_cast<int>(rng() % 3));
        ComponentCatalog cat = build_catalog(metric_closure(g), 4);
        std::vector<int> sel;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci)
            if (!cat.comps[ci].is_pair() && rng() % 3 == 0) sel.push_back(static_cast<int>(ci));
        CollectionState st = make_state(cat, sel);
        for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
            if (st.in_collection[ci]) continue;
            if (!is_violated(st, static_cast<int>(ci))) continue;
            ++violated_seen;
            Rat load = state_dual_load(st, static_cast<int>(ci));
            CollectionState st2 = add_component(st, static_cast<int>(ci));
            CHECK(st2.mst_cost < st.mst_cost);
            CHECK(st2.mst_cost == st.mst_cost + cat.comps[ci].cost - load);
        }
    }
    CHECK(violated_seen > 20);
}

TEST_CASE("mst = smst + loss on random sub-collections") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        Instance g = oracles::random_connected(rng, 6 + static_cast<int>(rng() % 5),
                                               static_cast<int>(rng() % 10),
                                               3 + static_cast<int>(rng() % 3));
        ComponentCatalog cat = build_catalog(metric_closure(g), 4);
        std::vector<int> sel;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci)
            if (!cat.comps[ci].is_pair() && (rng() & 1)) sel.push_back(static_cast<int>(ci));
        CollectionState st = make_state(cat, sel);
        CHECK(st.mst_cost == timeline_smst(st.mst) + st.loss_cost);
    }
}

TEST_CASE("each component of E_tau united with the tree loss holds one terminal part") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        Instance g = oracles::random_connected(rng, 6 + static_cast<int>(rng() % 5),
                                               static_cast<int>(rng() % 8),
                                               3 + static_cast<int>(rng() % 3));
        ComponentCatalog cat = build_catalog(metric_closure(g), 4);
        std::vector<int> sel;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci)
            if (!cat.comps[ci].is_pair() && (rng() & 1)) sel.push_back(static_cast<int>(ci));
        CollectionState st = make_state(cat, sel);
        std::vector<Edge> tree;
        for (int ei : st.mst.tree_edges) tree.push_back(st.graph.edges[ei]);
        auto [lidx, lcost] = subgraph_loss(st.graph.n, tree, st.graph.terminal);
        for (const TimelineEvent& ev : st.mst.timeline.events) {
            if (ev.y == 0) continue;
            DisjointSets ds(st.graph.n);
            for (int v = 1; v < st.graph.n; ++v)
                for (int w = 0; w < v; ++w)
                    if (ev.partition.block_of[v] == ev.partition.block_of[w]) ds.unite(v, w);
            for (int ei : lidx) ds.unite(tree[ei].u, tree[ei].v);
            // per super-component: exactly one distinct terminal block
            std::map<int, std::set<int>> blocks;
            for (int v = 0; v < st.graph.n; ++v)
                if (st.graph.terminal[v]) blocks[ds.find(v)].insert(ev.partition.block_of[v]);
            for (auto& [root, bs] : blocks) CHECK(bs.size() == 1);
        }
    }
}

TEST_CASE("smst is non-increasing along chains") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        Instance g = oracles::random_connected(rng, 6 + static_cast<int>(rng() % 4),
                                               static_cast<int>(rng() % 8),
                                               3 + static_cast<int>(rng() % 3));
        ComponentCatalog cat = build_catalog(metric_closure(g), 4);
        std::vector<int> nonpairs;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci)
            if (!cat.comps[ci].is_pair()) nonpairs.push_back(static_cast<int>(ci));
        std::shuffle(nonpairs.begin(), nonpairs.end(), rng);
        CollectionState st = initial_state(cat);
        Rat prev = st.smst_value;
        for (int ci : nonpairs) {
            st = add_component(st, ci);
            CHECK(st.smst_value <= prev);
            prev = st.smst_value;
        }
    }
}

namespace {

// finite-sum evaluation of mst(H) = integral of (r(H) - r(H_<=x)) dx
Rat graphic_rank_integral(const Instance& g) {
    auto rank_at = [&](const std::optional<Rat>& x) {
        DisjointSets ds(g.n);
        for (const Edge& e : g.edges)
            if (!x || e.cost <= *x) ds.unite(e.u, e.v);
        return g.n - ds.classes;
    };
    int rH = rank_at(std::nullopt);
    std::set<Rat> costs;
    for (const Edge& e : g.edges) costs.insert(e.cost);
    std::vector<Rat> ts{Rat(0)};
    for (const Rat& c : costs)
        if (c > 0) ts.push_back(c);
    Rat total = 0;
    for (size_t i = 0; i + 1 < ts.size(); ++i)
        total += Rat(rH - rank_at(ts[i])) * (ts[i + 1] - ts[i]);
    return total;  // integrand is zero beyond the largest cost
}

}  // namespace

TEST_CASE("contraction lemma and the rank-integral identity") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        Instance g = oracles::random_connected(rng, 6 + static_cast<int>(rng() % 4),
                                               static_cast<int>(rng() % 8),
                                               3 + static_cast<int>(rng() % 3));
        ComponentCatalog cat = build_catalog(metric_closure(g), 4);
        std::vector<int> r0, r1, r2;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
            if (cat.comps[ci].is_pair()) continue;
            switch (rng() % 4) {
                case 0: r0.push_back(static_cast<int>(ci)); break;
                case 1: r1.push_back(static_cast<int>(ci)); break;
                case 2: r2.push_back(static_cast<int>(ci)); break;
                default: break;
            }
        }
        auto smst_of = [&](std::vector<int> sel) {
            return make_state(cat, std::move(sel)).smst_value;
        };
        auto cup = [](std::vector<int> a, const std::vector<int>& b) {
            a.insert(a.end(), b.begin(), b.end());
            return a;
        };
        Rat lhs = smst_of(r0) - smst_of(cup(r0, r2));
        Rat rhs = smst_of(cup(r0, r1)) - smst_of(cup(cup(r0, r1), r2));
        CHECK(lhs >= rhs);
    }
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        Instance g = oracles::random_connected(rng, n, static_cast<int>(rng() % 12), 2);
        if (rng() & 1) g.edges.pop_back();  // sometimes disconnected
        CHECK(kruskal_forest_cost(g) == graphic_rank_integral(g));
    }
}
