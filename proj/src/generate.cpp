#include "steiner/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace steiner {

Family family_from_name(const std::string& name) {
    if (name == "skutella") return Family::Skutella;
    if (name == "random_bquasi") return Family::RandomBQuasi;
    if (name == "star") return Family::Star;
    if (name == "path") return Family::Path;
    throw ParseError("unknown generator family '" + name + "'");
}

Instance generate_skutella() {
    // Fano lines over points 1..7. Any labeling works; the construction is
    // isomorphism-invariant.
    static const int lines[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6},
                                    {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
    Instance inst;
    inst.n = 15;  // points 0..6, apex 7, lines 8..14
    inst.terminal.assign(inst.n, 0);
    for (int p = 0; p < 7; ++p) inst.terminal[p] = 1;
    inst.terminal[7] = 1;
    for (int l = 0; l < 7; ++l) {
        int lv = 8 + l;
        for (int p = 1; p <= 7; ++p) {
            bool incident = false;
            for (int k = 0; k < 3; ++k) incident |= (lines[l][k] == p);
            if (!incident) inst.edges.push_back({p - 1, lv, Rat(1)});
        }
        inst.edges.push_back({7, lv, Rat(1)});  // apex
    }
    inst.validate();
    return inst;
}

namespace {

Rat draw_cost(std::mt19937_64& rng, long lo, long hi) {
    // mostly integers, occasionally halves, to keep the arithmetic honest
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<int> den_pick(0, 3);
    long den = den_pick(rng) == 0 ? 2 : 1;
    std::uniform_int_distribution<long> num2(lo * den, hi * den);
    return den == 1 ? Rat(num(rng)) : Rat(num2(rng), den);
}

}  // namespace

Instance generate_random_bquasi(const GeneratorSpec& spec) {
    if (spec.b < 1) throw InfeasibleSpecError("b must be >= 1");
    if (spec.n < spec.b + 2)
        throw InfeasibleSpecError("need n >= b + 2 (got n=" + std::to_string(spec.n) +
                                  ", b=" + std::to_string(spec.b) + ")");
    std::mt19937_64 rng(spec.seed);

    // cluster sizes: one of exactly b, plus optional extra clusters while at
    // least two terminals remain
    std::vector<int> cluster_sizes{spec.b};
    int steiner_total = spec.b;
    while (spec.n - steiner_total > 2 && (rng() & 1)) {
        int room = spec.n - steiner_total - 2;
        std::uniform_int_distribution<int> sz(1, std::min(spec.b, room));
        int s = sz(rng);
        cluster_sizes.push_back(s);
        steiner_total += s;
    }
    int num_terms = spec.n - steiner_total;

    Instance inst;
    inst.n = spec.n;
    inst.terminal.assign(inst.n, 0);
    for (int t = 0; t < num_terms; ++t) inst.terminal[t] = 1;

    // spanning chain over a random terminal order keeps the instance connected
    std::vector<int> order(num_terms);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i + 1 < num_terms; ++i)
        inst.edges.push_back({order[i], order[i + 1], draw_cost(rng, spec.cost_lo, spec.cost_hi)});

    int next = num_terms;
    for (int size : cluster_sizes) {
        int base = next;
        next += size;
        // random tree inside the cluster
        for (int j = 1; j < size; ++j) {
            std::uniform_int_distribution<int> pick(0, j - 1);
            inst.edges.push_back(
                {base + pick(rng), base + j, draw_cost(rng, spec.cost_lo, spec.cost_hi)});
        }
        // every cluster vertex attaches to >= 3 distinct terminals (Steiner
        // degree at least 3 matches the consequence of A2)
        int attach = std::min(3, num_terms);
        for (int j = 0; j < size; ++j) {
            std::vector<int> ts(num_terms);
            std::iota(ts.begin(), ts.end(), 0);
            std::shuffle(ts.begin(), ts.end(), rng);
            for (int a = 0; a < attach; ++a)
                inst.edges.push_back({ts[a], base + j, draw_cost(rng, spec.cost_lo, spec.cost_hi)});
        }
    }
    inst.validate();
    return metric_closure(inst);
}

Instance generate_star(const GeneratorSpec& spec) {
    if (spec.n < 3) throw InfeasibleSpecError("star needs n >= 3");
    std::mt19937_64 rng(spec.seed);
    Instance inst;
    inst.n = spec.n;
    inst.terminal.assign(inst.n, 1);
    inst.terminal[0] = 0;  // center is Steiner
    for (int v = 1; v < spec.n; ++v)
        inst.edges.push_back({0, v, draw_cost(rng, spec.cost_lo, spec.cost_hi)});
    return inst;
}

Instance generate_path(const GeneratorSpec& spec) {
    if (spec.n < 2) throw InfeasibleSpecError("path needs n >= 2");
    std::mt19937_64 rng(spec.seed);
    Instance inst;
    inst.n = spec.n;
    inst.terminal.assign(inst.n, 0);
    inst.terminal[0] = inst.terminal[spec.n - 1] = 1;
    for (int v = 0; v + 1 < spec.n; ++v)
        inst.edges.push_back({v, v + 1, draw_cost(rng, spec.cost_lo, spec.cost_hi)});
    return inst;
}

Instance generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::Skutella: return generate_skutella();
        case Family::RandomBQuasi: return generate_random_bquasi(spec);
        case Family::Star: return generate_star(spec);
        case Family::Path: return generate_path(spec);
    }
    throw ParseError("bad family");
}

}  // namespace steiner
