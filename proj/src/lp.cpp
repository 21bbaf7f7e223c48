#include "steiner/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace steiner {

PartitionEnumerator::PartitionEnumerator(int n) : n_(n), rgs_(n, 0), maxv_(n, 0) {
    STEINER_CHECK(n >= 1, "partition enumeration needs a nonempty ground set");
}

bool PartitionEnumerator::next(Partition& p) {
    if (!started_) {
        started_ = true;
        p.block_of = rgs_;
        return true;
    }
    // standard restricted-growth-string odometer
    for (int i = n_ - 1; i >= 1; --i) {
        if (rgs_[i] <= maxv_[i - 1]) {
            ++rgs_[i];
            maxv_[i] = std::max(maxv_[i - 1], rgs_[i]);
            for (int j = i + 1; j < n_; ++j) {
                rgs_[j] = 0;
                maxv_[j] = maxv_[i];
            }
            p.block_of = rgs_;
            return true;
        }
    }
    return false;
}

std::vector<Partition> enumerate_partitions(int n, int max_ground) {
    if (n > max_ground)
        throw GuardError("partition enumeration guarded at ground size " +
                         std::to_string(max_ground) + " (got " + std::to_string(n) + ")");
    std::vector<Partition> out;
    PartitionEnumerator en(n);
    Partition p;
    while (en.next(p)) out.push_back(p);
    return out;
}

BigInt bell_number(int n) {
    std::vector<BigInt> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> nxt(i + 1);
        nxt[0] = row[i - 1];
        for (int j = 1; j <= i; ++j) nxt[j] = nxt[j - 1] + row[j - 1];
        row = std::move(nxt);
    }
    return row[0];
}

const Rat& PartitionLp::var_cost(int j) const {
    if (j < num_edge_vars()) return ground.edges[j].cost;
    return cat->comps[comp_vars[j - num_edge_vars()]].cost;
}

PartitionLp::Row PartitionLp::row_for(const Partition& p) const {
    Row row;
    std::set<int> term_blocks;
    for (int v = 0; v < cat->num_terminals(); ++v) term_blocks.insert(p.block_of[v]);
    row.rhs = static_cast<int>(term_blocks.size()) - 1;
    for (int j = 0; j < num_edge_vars(); ++j) {
        const Edge& e = ground.edges[j];
        if (p.block_of[e.u] != p.block_of[e.v]) row.coef.push_back({j, 1});
    }
    for (size_t c = 0; c < comp_vars.size(); ++c) {
        const FullComponent& comp = cat->comps[comp_vars[c]];
        int rc = rank_contribution(p, comp.terms);  // terminals are ground ids 0..nR-1
        if (rc > 0) row.coef.push_back({num_edge_vars() + static_cast<int>(c), rc});
    }
    return row;
}

Rat PartitionLp::lhs(const Partition& p, const std::vector<Rat>& x) const {
    Rat total = 0;
    for (int j = 0; j < num_edge_vars(); ++j) {
        if (x[j] == 0) continue;
        const Edge& e = ground.edges[j];
        if (p.block_of[e.u] != p.block_of[e.v]) total += x[j];
    }
    for (size_t c = 0; c < comp_vars.size(); ++c) {
        int j = num_edge_vars() + static_cast<int>(c);
        if (x[j] == 0) continue;
        int rc = rank_contribution(p, cat->comps[comp_vars[c]].terms);
        if (rc > 0) total += Rat(rc) * x[j];
    }
    return total;
}

PartitionLp build_partition_lp(const ComponentCatalog& cat, std::vector<int> S_nonpair) {
    PartitionLp lp;
    lp.cat = &cat;
    std::sort(S_nonpair.begin(), S_nonpair.end());
    lp.S_nonpair = std::move(S_nonpair);

    int nR = cat.num_terminals();
    lp.ground.n = nR;
    lp.ground.terminal.assign(nR, 1);
    lp.clone_base.assign(cat.comps.size(), -1);
    std::vector<char> in_S(cat.comps.size(), 0);
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (cat.comps[ci].is_pair()) {
            in_S[ci] = 1;
            lp.ground.edges.push_back(
                {cat.comps[ci].terms[0], cat.comps[ci].terms[1], cat.comps[ci].cost});
        }
    for (int ci : lp.S_nonpair) {
        const FullComponent& comp = cat.comps[ci];
        STEINER_CHECK(!comp.is_pair(), "S_nonpair may not contain pairs");
        in_S[ci] = 1;
        lp.clone_base[ci] = lp.ground.n;
        lp.ground.n += comp.num_internal;
        lp.ground.terminal.resize(lp.ground.n, 0);
        for (const Edge& e : comp.edges) {
            auto map_local = [&](int x) {
                return x < comp.size() ? comp.terms[x] : lp.clone_base[ci] + (x - comp.size());
            };
            lp.ground.edges.push_back({map_local(e.u), map_local(e.v), e.cost});
        }
    }
    for (size_t ci = 0; ci < cat.comps.size(); ++ci)
        if (!in_S[ci]) lp.comp_vars.push_back(static_cast<int>(ci));
    return lp;
}

namespace {

// Exact primal simplex on max{w y : M y <= d, y >= 0} (d >= 0, so the slack
// basis is feasible). Dantzig entering rule with a permanent switch to
// Bland's rule after a degeneracy stall keeps it finite.
struct MaxSimplex {
    int m, ny;
    std::vector<std::vector<Rat>> tab;  // (m+1) x (ny + m + 1); last row = reduced costs
    std::vector<int> basis;

    MaxSimplex(const std::vector<std::vector<Rat>>& M, const std::vector<Rat>& w,
               const std::vector<Rat>& d)
        : m(static_cast<int>(d.size())), ny(static_cast<int>(w.size())) {
        tab.assign(m + 1, std::vector<Rat>(ny + m + 1, Rat(0)));
        basis.resize(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < ny; ++j) tab[i][j] = M[i][j];
            tab[i][ny + i] = 1;
            tab[i][ny + m] = d[i];
            basis[i] = ny + i;
        }
        for (int j = 0; j < ny; ++j) tab[m][j] = -w[j];
    }

    void pivot(int pr, int pc) {
        Rat piv = tab[pr][pc];
        for (auto& v : tab[pr]) v /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == pr || tab[i][pc] == 0) continue;
            Rat factor = tab[i][pc];
            for (int j = 0; j <= ny + m; ++j) tab[i][j] -= factor * tab[pr][j];
        }
        basis[pr] = pc;
    }

    void solve() {
        bool bland = false;
        int stall = 0;
        for (;;) {
            int pc = -1;
            if (bland) {
                for (int j = 0; j < ny + m; ++j)
                    if (tab[m][j] < 0) {
                        pc = j;
                        break;
                    }
            } else {
                for (int j = 0; j < ny + m; ++j)
                    if (tab[m][j] < 0 && (pc < 0 || tab[m][j] < tab[m][pc])) pc = j;
            }
            if (pc < 0) return;  // optimal
            int pr = -1;
            for (int i = 0; i < m; ++i) {
                if (tab[i][pc] <= 0) continue;
                if (pr < 0) {
                    pr = i;
                    continue;
                }
                Rat lhs = tab[i][ny + m] * tab[pr][pc];
                Rat rhs = tab[pr][ny + m] * tab[i][pc];
                if (lhs < rhs || (lhs == rhs && basis[i] < basis[pr])) pr = i;
            }
            STEINER_CHECK(pr >= 0, "simplex: unbounded dual of a covering LP");
            Rat before = tab[m][ny + m];
            pivot(pr, pc);
            if (tab[m][ny + m] == before) {
                if (++stall > 50 && !bland) bland = true;
            } else {
                stall = 0;
            }
        }
    }

    Rat value() const { return tab[m][ny + m]; }
    Rat y(int j) const {
        for (int i = 0; i < m; ++i)
            if (basis[i] == j) return tab[i][ny + m];
        return Rat(0);
    }
    Rat multiplier(int i) const { return tab[m][ny + i]; }  // reduced cost of slack i
};

}  // namespace

LpResult solve_partition_lp(const ComponentCatalog& cat, const std::vector<int>& S_nonpair,
                            int max_ground) {
    LpResult res;
    res.lp = build_partition_lp(cat, S_nonpair);
    const PartitionLp& lp = res.lp;
    if (lp.ground.n > max_ground)
        throw GuardError("partition LP ground set has " + std::to_string(lp.ground.n) +
                         " vertices, guarded at " + std::to_string(max_ground));
    int nv = lp.num_vars();
    std::vector<Rat> cost(nv);
    for (int j = 0; j < nv; ++j) cost[j] = lp.var_cost(j);

    std::vector<std::pair<Partition, PartitionLp::Row>> active;
    res.x.assign(nv, Rat(0));
    res.value = 0;
    for (int round = 0;; ++round) {
        STEINER_CHECK(round < 1000, "partition LP row generation failed to converge");
        // exact separation over the full enumeration
        struct Cand {
            Rat violation;
            Partition p;
        };
        std::vector<Cand> worst;
        PartitionEnumerator en(lp.ground.n);
        Partition p;
        while (en.next(p)) {
            std::set<int> term_blocks;
            for (int v = 0; v < cat.num_terminals(); ++v) term_blocks.insert(p.block_of[v]);
            int rhs = static_cast<int>(term_blocks.size()) - 1;
            if (rhs <= 0) continue;
            Rat lhs = lp.lhs(p, res.x);
            if (lhs >= rhs) continue;
            Cand c{Rat(rhs) - lhs, p};
            worst.push_back(std::move(c));
            if (worst.size() > 512) {  // keep the most violated half
                std::nth_element(worst.begin(), worst.begin() + 256, worst.end(),
                                 [](const Cand& a, const Cand& b) { return a.violation > b.violation; });
                worst.resize(256);
            }
        }
        if (worst.empty()) break;  // res.x feasible for every partition constraint
        std::sort(worst.begin(), worst.end(),
                  [](const Cand& a, const Cand& b) { return a.violation > b.violation; });
        size_t take = std::min<size_t>(worst.size(), 64);
        for (size_t i = 0; i < take; ++i)
            active.push_back({worst[i].p, lp.row_for(worst[i].p)});

        // solve the dual of the restricted covering LP
        int m = nv, k = static_cast<int>(active.size());
        std::vector<std::vector<Rat>> M(m, std::vector<Rat>(k, Rat(0)));
        std::vector<Rat> w(k);
        for (int c = 0; c < k; ++c) {
            w[c] = active[c].second.rhs;
            for (auto& [var, coef] : active[c].second.coef) M[var][c] = coef;
        }
        MaxSimplex sx(M, w, cost);
        sx.solve();
        res.value = sx.value();
        for (int j = 0; j < nv; ++j) {
            res.x[j] = sx.multiplier(j);
            STEINER_CHECK(res.x[j] >= 0, "simplex produced a negative multiplier");
        }
        res.dual.clear();
        for (int c = 0; c < k; ++c) {
            Rat yv = sx.y(c);
            if (yv > 0) res.dual.push_back({active[c].first, std::move(yv)});
        }
    }

    // certificate: res.x is feasible for the full LP (the final scan), the
    // dual is feasible, and the two objectives coincide; together these prove
    // exact optimality of res.value for the complete constraint set.
    Rat primal_obj = 0;
    for (int j = 0; j < nv; ++j) primal_obj += cost[j] * res.x[j];
    STEINER_CHECK(primal_obj == res.value, "primal/dual objective mismatch");
    std::vector<Rat> col_load(nv, Rat(0));
    Rat dual_obj = 0;
    for (auto& [part, yv] : res.dual) {
        auto row = lp.row_for(part);
        dual_obj += Rat(row.rhs) * yv;
        for (auto& [var, coef] : row.coef) col_load[var] += Rat(coef) * yv;
        STEINER_CHECK(yv >= 0, "negative dual weight");
        // complementary slackness: positive dual weight => tight row
        STEINER_CHECK(lp.lhs(part, res.x) == Rat(row.rhs), "slack row with positive dual");
    }
    STEINER_CHECK(dual_obj == res.value, "dual objective mismatch");
    for (int j = 0; j < nv; ++j) {
        STEINER_CHECK(col_load[j] <= cost[j], "dual infeasible");
        // complementary slackness: positive primal => tight dual column
        if (res.x[j] > 0)
            STEINER_CHECK(col_load[j] == cost[j], "positive variable with slack dual column");
    }
    return res;
}

std::optional<Partition> find_violated_partition(const PartitionLp& lp,
                                                 const std::vector<Rat>& x, int max_ground) {
    if (lp.ground.n > max_ground)
        throw GuardError("feasibility scan guarded at ground size " + std::to_string(max_ground));
    PartitionEnumerator en(lp.ground.n);
    Partition p;
    while (en.next(p)) {
        std::set<int> term_blocks;
        for (int v = 0; v < lp.cat->num_terminals(); ++v) term_blocks.insert(p.block_of[v]);
        int rhs = static_cast<int>(term_blocks.size()) - 1;
        if (rhs <= 0) continue;
        if (lp.lhs(p, x) < rhs) return p;
    }
    return std::nullopt;
}

OptResult brute_force_opt(const Instance& inst, int max_steiner) {
    std::vector<int> terms = inst.terminals();
    STEINER_CHECK(terms.size() >= 1, "opt oracle needs a terminal");
    std::vector<int> steiner;
    for (int v = 0; v < inst.n; ++v)
        if (!inst.terminal[v]) steiner.push_back(v);
    if (static_cast<int>(steiner.size()) > max_steiner)
        throw GuardError("brute_force_opt guarded at " + std::to_string(max_steiner) +
                         " Steiner vertices (got " + std::to_string(steiner.size()) + ")");

    std::optional<Rat> best;
    std::vector<Edge> best_tree;
    for (uint32_t w = 0; w < (1u << steiner.size()); ++w) {
        std::vector<int> keep = terms;
        for (size_t i = 0; i < steiner.size(); ++i)
            if (w & (1u << i)) keep.push_back(steiner[i]);
        std::sort(keep.begin(), keep.end());
        Instance sub = induced_subgraph(inst, keep);
        DisjointSets ds(sub.n);
        Rat cost = 0;
        std::vector<Edge> tree;
        std::vector<int> order(sub.edges.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return sub.edges[a].cost < sub.edges[b].cost;
        });
        for (int ei : order)
            if (ds.unite(sub.edges[ei].u, sub.edges[ei].v)) {
                cost += sub.edges[ei].cost;
                tree.push_back({keep[sub.edges[ei].u], keep[sub.edges[ei].v], sub.edges[ei].cost});
            }
        if (ds.classes != 1) continue;  // induced graph disconnected
        if (!best || cost < *best) {
            best = cost;
            best_tree = std::move(tree);
        }
    }
    if (!best) throw DisconnectedError("terminals cannot be connected");

    // prune Steiner leaves; the minimum over subsets guarantees this only
    // ever removes zero-cost edges
    for (;;) {
        std::map<int, int> deg;
        for (const Edge& e : best_tree) {
            ++deg[e.u];
            ++deg[e.v];
        }
        bool removed = false;
        for (size_t i = 0; i < best_tree.size(); ++i) {
            const Edge& e = best_tree[i];
            int leaf = -1;
            if (deg[e.u] == 1 && !inst.terminal[e.u]) leaf = e.u;
            if (deg[e.v] == 1 && !inst.terminal[e.v]) leaf = e.v;
            if (leaf >= 0) {
                STEINER_CHECK(e.cost == 0, "optimal tree had a positive-cost steiner leaf");
                best_tree.erase(best_tree.begin() + static_cast<long>(i));
                removed = true;
                break;
            }
        }
        if (!removed) break;
    }
    return {*best, std::move(best_tree)};
}

OptRResult brute_force_opt_r(const ComponentCatalog& cat) {
    int nR = cat.num_terminals();
    size_t full = (1u << nR);
    if (static_cast<long long>(full) * static_cast<long long>(cat.comps.size()) > 400'000'000LL)
        throw GuardError("brute_force_opt_r state space too large");
    std::vector<char> has(full, 0);
    std::vector<Rat> g(full);
    std::vector<std::pair<uint32_t, int>> parent(full, {0, -1});
    for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
        uint32_t m = cat.comps[ci].term_mask;
        if (!has[m] || cat.comps[ci].cost < g[m]) {
            has[m] = 1;
            g[m] = cat.comps[ci].cost;
            parent[m] = {0, static_cast<int>(ci)};
        }
    }
    for (uint32_t a = 1; a < full; ++a) {
        if (!has[a]) continue;
        for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
            uint32_t km = cat.comps[ci].term_mask;
            // attach through exactly one shared terminal: keeps the
            // count-and-connectivity criterion invariant
            if (std::popcount(km & a) != 1) continue;
            uint32_t nm = a | km;
            if (nm == a) continue;
            Rat cand = g[a] + cat.comps[ci].cost;
            if (!has[nm] || cand < g[nm]) {
                has[nm] = 1;
                g[nm] = std::move(cand);
                parent[nm] = {a, static_cast<int>(ci)};
            }
        }
    }
    uint32_t full_mask = static_cast<uint32_t>(full - 1);
    if (!has[full_mask])
        throw DisconnectedError("no r-restricted Steiner tree spans the terminals");
    OptRResult res;
    res.cost = g[full_mask];
    for (uint32_t m = full_mask; m;) {
        auto [prev, ci] = parent[m];
        STEINER_CHECK(ci >= 0, "opt_r witness reconstruction failed");
        res.comps.push_back(ci);
        m = prev;
    }
    std::sort(res.comps.begin(), res.comps.end());
    return res;
}

Rat collection_loss(const ComponentCatalog& cat, const std::vector<int>& comps) {
    Rat total = 0;
    for (int ci : comps) total += cat.comps[ci].loss_cost;
    return total;
}

namespace {

Instance collection_graph(const ComponentCatalog& cat, const std::vector<int>& comps) {
    Instance g;
    g.n = cat.num_terminals();
    g.terminal.assign(g.n, 1);
    for (int ci : comps) {
        const FullComponent& comp = cat.comps[ci];
        int base = g.n;
        g.n += comp.num_internal;
        g.terminal.resize(g.n, 0);
        for (const Edge& e : comp.edges) {
            auto map_local = [&](int x) {
                return x < comp.size() ? comp.terms[x] : base + (x - comp.size());
            };
            g.edges.push_back({map_local(e.u), map_local(e.v), e.cost});
        }
    }
    return g;
}

}  // namespace

Rat collection_smst(const ComponentCatalog& cat, const std::vector<int>& comps) {
    KruskalResult kr = kruskal_dual(collection_graph(cat, comps));
    Rat smst = 0;
    for (const TimelineEvent& ev : kr.timeline.events) smst += Rat(ev.sbar - 1) * ev.y;
    return smst;
}

Rat integrality_gap(const ComponentCatalog& cat, int max_ground) {
    Rat lp = solve_partition_lp(cat, {}, max_ground).value;
    STEINER_CHECK(lp > 0, "degenerate LP value in gap computation");
    return brute_force_opt_r(cat).cost / lp;
}

namespace {

// first edge-variable slot of each selected component (pairs occupy a common
// prefix in catalog order)
std::map<int, int> edge_var_offsets(const PartitionLp& lp, int* pair_count_out) {
    int pairs = 0;
    for (const FullComponent& c : lp.cat->comps) pairs += c.is_pair() ? 1 : 0;
    std::map<int, int> off;
    int pos = pairs;
    for (int ci : lp.S_nonpair) {
        off[ci] = pos;
        pos += static_cast<int>(lp.cat->comps[ci].edges.size());
    }
    if (pair_count_out) *pair_count_out = pairs;
    return off;
}

}  // namespace

std::pair<PartitionLp, std::vector<Rat>> extend_primal(const PartitionLp& lp,
                                                       const std::vector<Rat>& x, int J) {
    STEINER_CHECK(static_cast<int>(x.size()) == lp.num_vars(), "point/layout mismatch");
    auto it = std::find(lp.comp_vars.begin(), lp.comp_vars.end(), J);
    STEINER_CHECK(it != lp.comp_vars.end(), "J is not a component variable of this LP");
    Rat xJ = x[lp.num_edge_vars() + static_cast<int>(it - lp.comp_vars.begin())];

    std::vector<int> S2 = lp.S_nonpair;
    S2.push_back(J);
    PartitionLp lp2 = build_partition_lp(*lp.cat, S2);
    std::vector<Rat> x2(lp2.num_vars(), Rat(0));

    int pairs = 0;
    auto off1 = edge_var_offsets(lp, &pairs);
    auto off2 = edge_var_offsets(lp2, nullptr);
    for (int j = 0; j < pairs; ++j) x2[j] = x[j];  // pair edges keep their slots
    for (int ci : lp2.S_nonpair) {
        int count = static_cast<int>(lp.cat->comps[ci].edges.size());
        for (int k = 0; k < count; ++k)
            x2[off2.at(ci) + k] = (ci == J) ? xJ : x[off1.at(ci) + k];
    }
    for (size_t c = 0; c < lp2.comp_vars.size(); ++c) {
        int ci = lp2.comp_vars[c];
        auto old = std::find(lp.comp_vars.begin(), lp.comp_vars.end(), ci);
        STEINER_CHECK(old != lp.comp_vars.end(), "component variable vanished");
        x2[lp2.num_edge_vars() + static_cast<int>(c)] =
            x[lp.num_edge_vars() + static_cast<int>(old - lp.comp_vars.begin())];
    }
    return {std::move(lp2), std::move(x2)};
}

std::pair<PartitionLp, std::vector<Rat>> extend_primal(const LpResult& base, int J) {
    return extend_primal(base.lp, base.x, J);
}

bool rankdrop_check(const ComponentCatalog& cat, const std::vector<int>& tstar_comps, int b) {
    KruskalResult kr = kruskal_dual(collection_graph(cat, tstar_comps));
    for (const TimelineEvent& ev : kr.timeline.events) {
        if (ev.y == 0) continue;
        if (Rat(2 * b + 1) * Rat(ev.sbar - 1) < Rat(b + 1) * Rat(ev.rank - 1)) return false;
    }
    return true;
}

}  // namespace steiner
