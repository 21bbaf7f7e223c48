#include "steiner/generate.hpp"
#include "steiner/graph.hpp"
#include "steiner/verify.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace steiner;

TEST_CASE("metric closure leaves PATH2 unchanged") {
    Instance c = metric_closure(fixtures::path2());
    REQUIRE(c.edges.size() == 1);
    CHECK(c.edges[0].cost == Rat(5));
}

TEST_CASE("metric closure prices STAR3 terminal pairs at 2") {
    Instance g = fixtures::star3();
    Instance c = metric_closure(g);
    auto d = oracles::floyd_warshall(g);
    int pair_edges = 0;
    for (const Edge& e : c.edges) {
        CHECK(e.cost == *d[e.u][e.v]);
        if (g.terminal[e.u] && g.terminal[e.v]) {
            CHECK(e.cost == Rat(2));
            ++pair_edges;
        }
    }
    CHECK(pair_edges == 3);
    CHECK(c.edges.size() == 6);
}

TEST_CASE("metric closure on Skutella matches the all-pairs oracle") {
    Instance g = generate_skutella();
    Instance c = metric_closure(g);
    auto d = oracles::floyd_warshall(g);
    std::vector<int> terms = g.terminals();
    std::map<std::pair<int, int>, Rat> cost;
    for (const Edge& e : c.edges) cost[std::minmax(e.u, e.v)] = e.cost;
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            auto it = cost.find(std::minmax(terms[i], terms[j]));
            REQUIRE(it != cost.end());
            CHECK(it->second == *d[terms[i]][terms[j]]);
        }
    CHECK(quasi_bipartite_bound(c) == 1);  // quasi-bipartiteness preserved
}

TEST_CASE("metric closure fails on disconnected terminals") {
    Instance g;
    g.n = 3;
    g.terminal = {1, 1, 1};
    g.edges = {{0, 1, Rat(1)}};
    CHECK_THROWS_AS(metric_closure(g), DisconnectedError);
}

TEST_CASE("metric closure is idempotent and preserves b on random instances") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        Instance g = oracles::random_connected(rng, 4 + static_cast<int>(rng() % 9),
                                               static_cast<int>(rng() % 10),
                                               2 + static_cast<int>(rng() % 4));
        Instance c = metric_closure(g);
        CHECK(quasi_bipartite_bound(c) == quasi_bipartite_bound(g));
        Instance cc = metric_closure(c);
        REQUIRE(same_instance(c, cc));
    }
}

TEST_CASE("steiner neighborhoods") {
    SUBCASE("Skutella: 7 singletons, b = 1") {
        auto nbs = steiner_neighborhoods(generate_skutella());
        REQUIRE(nbs.size() == 7);
        for (const auto& nb : nbs) CHECK(nb.members.size() == 1);
        CHECK(quasi_bipartite_bound(generate_skutella()) == 1);
    }
    SUBCASE("fig3: {s1,s3} and {s4}, b = 2") {
        auto nbs = steiner_neighborhoods(fixtures::fig3());
        REQUIRE(nbs.size() == 2);
        CHECK(nbs[0].members == std::vector<int>{9, 10});
        CHECK(nbs[1].members == std::vector<int>{11});
        CHECK(quasi_bipartite_bound(fixtures::fig3()) == 2);
    }
    SUBCASE("all-terminal instance: none") {
        Instance g = fixtures::triangle();
        CHECK(steiner_neighborhoods(g).empty());
        CHECK(quasi_bipartite_bound(g) == 0);
    }
}

TEST_CASE("induced subgraph") {
    Instance c = metric_closure(fixtures::star3());
    SUBCASE("keep = R gives the cost-2 triangle") {
        Instance sub = induced_subgraph(c, c.terminals());
        CHECK(sub.n == 3);
        REQUIRE(sub.edges.size() == 3);
        for (const Edge& e : sub.edges) CHECK(e.cost == Rat(2));
        CHECK(sub.clone_of == std::vector<int>{1, 2, 3});
    }
    SUBCASE("keep = everything is the identity") {
        Instance sub = induced_subgraph(c, {0, 1, 2, 3});
        CHECK(same_instance(sub, c));
    }
    SUBCASE("keep = one vertex has no edges") {
        Instance sub = induced_subgraph(c, {1});
        CHECK(sub.n == 1);
        CHECK(sub.edges.empty());
        CHECK(sub.terminal[0]);
    }
}

TEST_CASE("disjoint sets collapse along any spanning tree") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 20);
        Instance g = oracles::random_connected(rng, n, 0, 2);
        DisjointSets ds(n);
        for (const Edge& e : g.edges) ds.unite(e.u, e.v);
        CHECK(ds.classes == 1);
        for (int v = 0; v < n; ++v) {
            int r = ds.find(v);
            CHECK(ds.find(r) == r);
            CHECK(r == ds.find(0));
        }
    }
}

TEST_CASE("instance validation rejects malformed graphs") {
    Instance g;
    g.n = 2;
    g.terminal = {1, 1};
    g.edges = {{0, 0, Rat(1)}};
    CHECK_THROWS_AS(g.validate(), ParseError);
    g.edges = {{0, 1, Rat(1)}, {1, 0, Rat(2)}};
    CHECK_THROWS_AS(g.validate(), ParseError);
    g.edges = {{0, 1, Rat(-1)}};
    CHECK_THROWS_AS(g.validate(), ParseError);
}
