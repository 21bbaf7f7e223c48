#include "steiner/verify.hpp"

#include "steiner/lp.hpp"
#include "steiner/rz.hpp"
#include "steiner/stp.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace steiner {

bool same_instance(const Instance& a, const Instance& b) {
    if (a.n != b.n) return false;
    for (int v = 0; v < a.n; ++v)
        if ((a.terminal[v] != 0) != (b.terminal[v] != 0)) return false;
    auto canon = [](const Instance& g) {
        std::vector<std::tuple<int, int, Rat>> es;
        for (const Edge& e : g.edges) {
            auto [x, y] = std::minmax(e.u, e.v);
            es.emplace_back(x, y, e.cost);
        }
        std::sort(es.begin(), es.end());
        return es;
    };
    return canon(a) == canon(b);
}

bool all_passed(const std::vector<VerifyItem>& items) {
    for (const auto& it : items)
        if (!it.pass && !it.skipped) return false;
    return true;
}

namespace {

Rat timeline_smst(const KruskalResult& kr) {
    Rat s = 0;
    for (const TimelineEvent& ev : kr.timeline.events) s += Rat(ev.sbar - 1) * ev.y;
    return s;
}

Rat timeline_dual_objective(const KruskalResult& kr) {
    Rat s = 0;
    for (const TimelineEvent& ev : kr.timeline.events) s += Rat(ev.rank - 1) * ev.y;
    return s;
}

std::vector<int> random_subcollection(const ComponentCatalog& cat, std::mt19937_64& rng) {
    std::vector<int> sel;
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (!cat.comps[ci].is_pair() && (rng() & 1)) sel.push_back(static_cast<int>(ci));
    return sel;
}

}  // namespace

std::vector<VerifyItem> verify_instance(const Instance& inst, int r, int max_ground,
                                        uint64_t seed) {
    std::vector<VerifyItem> out;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out.push_back({name, ok, false, detail});
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        out.push_back({name, true, true, why});
    };
    std::mt19937_64 rng(seed);

    try {
        inst.validate();
        check("instance invariants", true);
    } catch (const std::exception& ex) {
        check("instance invariants", false, ex.what());
        return out;
    }
    if (inst.num_terminals() < 2) {
        skip("pipeline", "fewer than two terminals");
        return out;
    }

    Instance closed = metric_closure(inst);
    check("metric closure idempotent", same_instance(closed, metric_closure(closed)));
    check("closure preserves b", quasi_bipartite_bound(closed) == quasi_bipartite_bound(inst));
    {
        bool ok = true;
        std::vector<int> terms = inst.terminals();
        std::map<std::pair<int, int>, Rat> cost;
        for (const Edge& e : closed.edges) cost[std::minmax(e.u, e.v)] = e.cost;
        for (size_t i = 0; i < terms.size() && ok; ++i) {
            auto dist = shortest_paths_from(inst, terms[i]);
            for (size_t j = i + 1; j < terms.size(); ++j) {
                auto it = cost.find(std::minmax(terms[i], terms[j]));
                ok = ok && it != cost.end() && dist[terms[j]] && it->second == *dist[terms[j]];
            }
        }
        check("closed pair costs are shortest-path distances", ok);
    }
    check("round trip parse(write(inst)) == inst", same_instance(inst, parse_stp(write_stp(inst))));

    ComponentCatalog cat;
    try {
        cat = build_catalog(closed, r);
    } catch (const GuardError& ex) {
        skip("catalog and solver checks", ex.what());
        return out;
    }
    {
        bool ok = true;
        for (const FullComponent& comp : cat.comps) {
            std::vector<int> deg(comp.local_vertex_count(), 0);
            Rat sum = 0;
            for (const Edge& e : comp.edges) {
                ++deg[e.u];
                ++deg[e.v];
                sum += e.cost;
            }
            ok = ok && sum == comp.cost;
            ok = ok && static_cast<int>(comp.edges.size()) == comp.local_vertex_count() - 1;
            for (int i = 0; i < comp.size(); ++i) ok = ok && deg[i] == 1;
            for (int i = comp.size(); i < comp.local_vertex_count(); ++i) ok = ok && deg[i] >= 2;
            Rat lsum = 0;
            for (int ei : comp.loss_edges) lsum += comp.edges[ei].cost;
            ok = ok && lsum == comp.loss_cost;
        }
        check("component leaf/degree/cost structure", ok);
    }
    {
        bool ok = true;
        try {
            cat.working_graph.validate();  // duplicate edges would throw
        } catch (const std::exception&) {
            ok = false;
        }
        check("working graph disjointness", ok);
    }
    {
        // losses add up over sub-collections (components meet only at terminals)
        bool ok = true;
        for (int trial = 0; trial < 8 && ok; ++trial) {
            std::vector<int> sel = random_subcollection(cat, rng);
            CollectionState st = make_state(cat, sel);
            auto [idx, cost] = subgraph_loss(st.graph.n, st.graph.edges, st.graph.terminal);
            Rat expect = 0;
            for (int ci : sel) expect += cat.comps[ci].loss_cost;
            ok = cost == expect;
        }
        check("loss is additive over components", ok);
    }
    {
        bool duality = true, slack = true, lemma6 = true, loads = true;
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<int> sel = random_subcollection(cat, rng);
            CollectionState st = make_state(cat, sel);
            duality = duality && timeline_dual_objective(st.mst) == st.mst_cost;
            lemma6 = lemma6 && st.mst_cost == timeline_smst(st.mst) + st.loss_cost;
            for (int ei : st.mst.tree_edges) {
                const Edge& e = st.graph.edges[ei];
                Rat covered = 0;
                for (const TimelineEvent& ev : st.mst.timeline.events)
                    if (ev.partition.block_of[e.u] != ev.partition.block_of[e.v])
                        covered += ev.y;
                slack = slack && covered == e.cost;
            }
            for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
                if (st.in_collection[ci]) continue;
                std::vector<int> kv(cat.comps[ci].terms.begin(), cat.comps[ci].terms.end());
                loads = loads &&
                        dual_load(st.mst.timeline, kv) == state_dual_load(st, static_cast<int>(ci));
            }
        }
        check("strong duality: tree cost equals dual objective", duality);
        check("tight dual constraints on tree edges", slack);
        check("mst = smst + loss", lemma6);
        check("dual load: timeline equals bottleneck MST", loads);
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 6 && ok; ++trial) {
            std::vector<int> sel = random_subcollection(cat, rng);
            CollectionState st = make_state(cat, sel);
            for (size_t ci = 0; ci < cat.comps.size() && ok; ++ci) {
                if (st.in_collection[ci]) continue;
                auto f = selection_value(st, static_cast<int>(ci));
                CollectionState st2 = add_component(st, static_cast<int>(ci));
                bool improved = st2.mst_cost < st.mst_cost;
                ok = improved == (f && *f < 1);
            }
        }
        check("mst improves iff f < 1", ok);
    }

    RunReport rep = rz_solve(inst, r);
    {
        bool ok = true;
        Rat prev = rep.initial_mst;
        for (const IterationRecord& it : rep.iterations) {
            ok = ok && it.f < 1 && it.mst < prev;
            prev = it.mst;
        }
        check("iterations: f < 1 and mst strictly decreasing", ok);
    }
    OptRResult optr = brute_force_opt_r(cat);
    check("lower bound <= opt_r <= final cost",
          rep.lower_bound <= optr.cost && optr.cost <= rep.final_cost);
    {
        auto [bound, ok] = [&] {
            RunReport tmp = rep;
            tmp.oracle_opt_r = optr.cost;
            return certify_ratio(tmp, rep.b);
        }();
        check("ratio within the b-quasi-bipartite bound " + rat_str(bound), ok);
    }
    {
        Rat lstar = collection_loss(cat, optr.comps);
        auto tp = tpcost_bound_check(rep, optr.cost, lstar);
        check("final cost within the loss-contraction bound", tp.bound_holds);
        check("loss(T*) <= opt_r / 2", tp.kz_premise);
        int b = rep.b;
        if (b >= 1) {
            check("mst(G[R]) <= 2 opt_r - (2/b) loss(T*)",
                  rep.initial_mst <= 2 * optr.cost - Rat(2) * lstar / b);
            if (b == 3 || b == 4)
                check("mst(G[R]) <= 2 opt_r - loss(T*)",
                      rep.initial_mst <= 2 * optr.cost - lstar);
        }
        check("rank drop bound on T* partitions", rankdrop_check(cat, optr.comps, b));
    }
    {
        OptResult opt;
        try {
            opt = brute_force_opt(inst);
            check("opt <= opt_r", opt.cost <= optr.cost);
        } catch (const GuardError& ex) {
            skip("opt <= opt_r", ex.what());
        }
    }
    if (cat.num_terminals() <= max_ground) {
        LpResult lp = solve_partition_lp(cat, {}, max_ground);
        check("lp(pairs) <= opt_r", lp.value <= optr.cost);
        int b = quasi_bipartite_bound(inst);
        if (b >= 1)
            check("opt_r / lp(pairs) <= (2b+1)/(b+1)",
                  optr.cost * Rat(b + 1) <= lp.value * Rat(2 * b + 1));
        // weak duality bridge through the final collection
        std::vector<int> final_sel;
        for (const IterationRecord& it : rep.iterations) final_sel.push_back(it.comp);
        try {
            LpResult lpf = solve_partition_lp(cat, final_sel, max_ground);
            check("smst^p <= lp(S^p) <= opt_r",
                  rep.lower_bound <= lpf.value && lpf.value <= optr.cost);
        } catch (const GuardError& ex) {
            skip("smst^p <= lp(S^p) <= opt_r", ex.what());
        }
    } else {
        skip("LP oracle checks", "ground set exceeds --max-ground");
    }
    return out;
}

}  // namespace steiner
