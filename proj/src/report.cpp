#include "steiner/report.hpp"

#include <json.hpp>

namespace steiner {

std::string write_report(const RunReport& r) {
    using json = nlohmann::ordered_json;
    json j;
    j["schema"] = 1;
    j["instance"] = {{"digest", r.digest}, {"vertices", r.n}, {"terminals", r.num_terminals}};
    j["r"] = r.r;
    j["b"] = r.b;
    j["trivial"] = r.trivial;
    j["initial"] = {{"mst", rat_str(r.initial_mst)}, {"smst", rat_str(r.initial_smst)}};
    json iters = json::array();
    for (const IterationRecord& it : r.iterations) {
        json terms = json::array();
        for (int t : it.comp_terminals) terms.push_back(t + 1);
        iters.push_back({{"component", terms},
                         {"f", rat_str(it.f)},
                         {"mst", rat_str(it.mst)},
                         {"smst", rat_str(it.smst)},
                         {"loss", rat_str(it.loss)}});
    }
    j["iterations"] = iters;
    j["final_cost"] = rat_str(r.final_cost);
    j["pruned_cost"] = rat_str(r.pruned_cost);
    j["lower_bound"] = rat_str(r.lower_bound);
    json tree = json::array();
    for (auto& [u, v] : r.tree_edges) tree.push_back({u + 1, v + 1});
    j["tree"] = tree;
    if (r.oracle_opt || r.oracle_opt_r || r.oracle_tstar_loss || r.lp_pairs) {
        json o;
        if (r.oracle_opt) o["opt"] = rat_str(*r.oracle_opt);
        if (r.oracle_opt_r) o["opt_r"] = rat_str(*r.oracle_opt_r);
        if (r.oracle_tstar_loss) o["tstar_loss"] = rat_str(*r.oracle_tstar_loss);
        if (r.lp_pairs) o["lp_pairs"] = rat_str(*r.lp_pairs);
        j["oracle"] = o;
    }
    if (r.ratio) j["ratio"] = rat_str(*r.ratio);
    if (r.theorem_bound) j["theorem_bound"] = rat_str(*r.theorem_bound);
    if (r.bound_satisfied) j["bound_satisfied"] = *r.bound_satisfied;
    return j.dump(2) + "\n";
}

}  // namespace steiner
