#include "steiner/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace steiner {

int Instance::num_terminals() const {
    int k = 0;
    for (char t : terminal) k += (t != 0);
    return k;
}

std::vector<int> Instance::terminals() const {
    std::vector<int> r;
    for (int v = 0; v < n; ++v)
        if (terminal[v]) r.push_back(v);
    return r;
}

void Instance::validate() const {
    if (static_cast<int>(terminal.size()) != n)
        throw ParseError("terminal flag vector size mismatch");
    if (!clone_of.empty() && static_cast<int>(clone_of.size()) != n)
        throw ParseError("clone_of size mismatch");
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw ParseError("edge endpoint out of range");
        if (e.u == e.v) throw ParseError("self-loop");
        if (e.cost < 0) throw ParseError("negative edge cost");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) throw ParseError("duplicate edge");
    }
}

DisjointSets::DisjointSets(int n) : parent(n), rnk(n, 0), classes(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
}

int DisjointSets::find(int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

bool DisjointSets::unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rnk[x] < rnk[y]) std::swap(x, y);
    parent[y] = x;
    if (rnk[x] == rnk[y]) ++rnk[x];
    --classes;
    return true;
}

std::vector<SteinerNeighborhood> steiner_neighborhoods(const Instance& inst) {
    DisjointSets ds(inst.n);
    for (const Edge& e : inst.edges)
        if (!inst.terminal[e.u] && !inst.terminal[e.v]) ds.unite(e.u, e.v);
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < inst.n; ++v)
        if (!inst.terminal[v]) groups[ds.find(v)].push_back(v);
    std::vector<SteinerNeighborhood> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(SteinerNeighborhood{std::move(members)});
    }
    // deterministic order: by smallest member
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.members.front() < b.members.front();
    });
    return out;
}

int quasi_bipartite_bound(const Instance& inst) {
    int b = 0;
    for (const auto& nb : steiner_neighborhoods(inst))
        b = std::max(b, static_cast<int>(nb.members.size()));
    return b;
}

namespace {

std::vector<std::vector<std::pair<int, Rat>>> adjacency(const Instance& inst) {
    std::vector<std::vector<std::pair<int, Rat>>> adj(inst.n);
    for (const Edge& e : inst.edges) {
        adj[e.u].push_back({e.v, e.cost});
        adj[e.v].push_back({e.u, e.cost});
    }
    return adj;
}

}  // namespace

std::vector<std::optional<Rat>> shortest_paths_from(const Instance& inst, int src) {
    auto adj = adjacency(inst);
    std::vector<std::optional<Rat>> dist(inst.n);
    dist[src] = Rat(0);
    // Dijkstra with exact keys; the pq may hold stale entries.
    using Item = std::pair<Rat, int>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    pq.push({Rat(0), src});
    std::vector<char> done(inst.n, 0);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (auto& [w, c] : adj[v]) {
            Rat nd = d + c;
            if (!dist[w] || nd < *dist[w]) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
    return dist;
}

Instance metric_closure(const Instance& inst) {
    std::vector<int> terms = inst.terminals();
    auto nbs = steiner_neighborhoods(inst);
    std::vector<int> nb_of(inst.n, -1);
    for (size_t i = 0; i < nbs.size(); ++i)
        for (int v : nbs[i].members) nb_of[v] = static_cast<int>(i);

    // all required distances come from one SSSP per vertex (desk scale)
    std::vector<std::vector<std::optional<Rat>>> dist(inst.n);
    for (int v = 0; v < inst.n; ++v) dist[v] = shortest_paths_from(inst, v);

    std::map<std::pair<int, int>, Rat> cost;
    for (const Edge& e : inst.edges) cost[std::minmax(e.u, e.v)] = e.cost;

    auto price = [&](int u, int v) {
        const auto& d = dist[u][v];
        if (!d) return;  // A2 pairs inside one neighborhood are always reachable
        auto key = std::minmax(u, v);
        auto it = cost.find(key);
        if (it == cost.end() || *d < it->second) cost[key] = *d;
    };

    // A1: complete graph on terminals
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            if (!dist[terms[i]][terms[j]])
                throw DisconnectedError("terminals " + std::to_string(terms[i]) + " and " +
                                        std::to_string(terms[j]) + " are disconnected");
            price(terms[i], terms[j]);
        }
    // A2: every Steiner vertex to its neighborhood and to all terminals
    for (int v = 0; v < inst.n; ++v) {
        if (inst.terminal[v]) continue;
        for (int u : nbs[nb_of[v]].members)
            if (u != v) price(v, u);
        for (int t : terms)
            if (dist[v][t]) price(v, t);
    }

    Instance out;
    out.n = inst.n;
    out.terminal = inst.terminal;
    out.clone_of = inst.clone_of;
    out.edges.reserve(cost.size());
    for (auto& [key, c] : cost) out.edges.push_back({key.first, key.second, c});
    return out;
}

Instance induced_subgraph(const Instance& inst, const std::vector<int>& keep) {
    std::vector<int> index(inst.n, -1);
    for (size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
    Instance out;
    out.n = static_cast<int>(keep.size());
    out.terminal.resize(out.n);
    out.clone_of.resize(out.n);
    for (size_t i = 0; i < keep.size(); ++i) {
        out.terminal[i] = inst.terminal[keep[i]];
        out.clone_of[i] = inst.origin_of(keep[i]);
    }
    for (const Edge& e : inst.edges)
        if (index[e.u] >= 0 && index[e.v] >= 0)
            out.edges.push_back({index[e.u], index[e.v], e.cost});
    return out;
}

std::string instance_digest(const Instance& inst) {
    std::ostringstream os;
    os << inst.n << ";";
    for (int v = 0; v < inst.n; ++v)
        if (inst.terminal[v]) os << v << ",";
    os << ";";
    std::vector<std::tuple<int, int, std::string>> es;
    for (const Edge& e : inst.edges) {
        auto [a, b] = std::minmax(e.u, e.v);
        es.emplace_back(a, b, rat_str(e.cost));
    }
    std::sort(es.begin(), es.end());
    for (auto& [a, b, c] : es) os << a << "-" << b << ":" << c << ";";
    std::string s = os.str();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace steiner
