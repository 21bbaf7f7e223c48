#include "steiner/generate.hpp"
#include "steiner/lp.hpp"
#include "steiner/report.hpp"
#include "steiner/rz.hpp"
#include "steiner/stp.hpp"
#include "steiner/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace steiner;

namespace {

struct Options {
    std::string input = "-";
    std::string report;
    std::string output = "-";
    int r = 3;
    int max_ground = 12;
    int max_steiner = 16;
    bool with_oracle = false;
    std::string family = "random_bquasi";
    int n = 8, b = 1;
    uint64_t seed = 0;
    long cost_lo = 1, cost_hi = 10;
};

Instance load_instance(const Options& opt) {
    std::vector<std::string> warnings;
    Instance inst;
    if (opt.input == "-") {
        inst = parse_stp(std::cin, &warnings);
    } else {
        std::ifstream in(opt.input);
        if (!in) throw ParseError("cannot open input file '" + opt.input + "'");
        inst = parse_stp(in, &warnings);
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return inst;
}

void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    out << text;
}

std::string show(const Rat& q) { return rat_str(q) + " (" + rat_decimal(q) + ")"; }

void maybe_write_report(const Options& opt, const RunReport& rep) {
    if (!opt.report.empty()) emit(opt.report, write_report(rep));
}

int cmd_solve(const Options& opt) {
    Instance inst = load_instance(opt);
    ComponentCatalog cat;
    RunReport rep = rz_solve(inst, opt.r, &cat);
    if (rep.trivial) {
        std::cout << "single terminal: cost 0/1 (0.000000)\n";
        maybe_write_report(opt, rep);
        return 0;
    }
    try {
        OptRResult optr = brute_force_opt_r(cat);
        rep.oracle_opt_r = optr.cost;
        rep.oracle_tstar_loss = collection_loss(cat, optr.comps);
        rep.ratio = rep.final_cost / optr.cost;
        auto [bound, ok] = certify_ratio(rep, rep.b);
        rep.theorem_bound = bound;
        rep.bound_satisfied = ok;
    } catch (const GuardError& ex) {
        std::cerr << "warning: opt_r oracle skipped: " << ex.what() << "\n";
    }
    if (opt.with_oracle) {
        try {
            rep.oracle_opt = brute_force_opt(inst, opt.max_steiner).cost;
        } catch (const GuardError& ex) {
            std::cerr << "warning: opt oracle skipped: " << ex.what() << "\n";
        }
        try {
            rep.lp_pairs = solve_partition_lp(cat, {}, opt.max_ground).value;
        } catch (const GuardError& ex) {
            std::cerr << "warning: LP oracle skipped: " << ex.what() << "\n";
        }
    }
    std::cout << "terminals:   " << rep.num_terminals << ", r = " << rep.r
              << ", b = " << rep.b << "\n";
    std::cout << "mst(G[R]):   " << show(rep.initial_mst) << "\n";
    std::cout << "iterations:  " << rep.iterations.size() << "\n";
    for (const IterationRecord& it : rep.iterations) {
        std::cout << "  add {";
        for (size_t i = 0; i < it.comp_terminals.size(); ++i)
            std::cout << (i ? "," : "") << it.comp_terminals[i] + 1;
        std::cout << "}  f = " << show(it.f) << "  mst -> " << show(it.mst) << "\n";
    }
    std::cout << "final cost:  " << show(rep.final_cost) << "\n";
    std::cout << "pruned cost: " << show(rep.pruned_cost) << "\n";
    std::cout << "lower bound: " << show(rep.lower_bound) << "\n";
    if (rep.oracle_opt_r) std::cout << "opt_r:       " << show(*rep.oracle_opt_r) << "\n";
    if (rep.ratio) std::cout << "ratio:       " << show(*rep.ratio) << "\n";
    if (rep.theorem_bound)
        std::cout << "bound:       " << show(*rep.theorem_bound)
                  << (rep.bound_satisfied && *rep.bound_satisfied ? "  satisfied" : "  VIOLATED")
                  << "\n";
    if (rep.oracle_opt) std::cout << "opt:         " << show(*rep.oracle_opt) << "\n";
    if (rep.lp_pairs) std::cout << "lp(pairs):   " << show(*rep.lp_pairs) << "\n";
    maybe_write_report(opt, rep);
    return 0;
}

int cmd_exact(const Options& opt) {
    Instance inst = load_instance(opt);
    OptResult best = brute_force_opt(inst, opt.max_steiner);
    std::cout << "opt:      " << show(best.cost) << "\n";
    Instance closed = metric_closure(inst);
    ComponentCatalog cat = build_catalog(closed, opt.r);
    OptRResult optr = brute_force_opt_r(cat);
    std::cout << "opt_r:    " << show(optr.cost) << " (r = " << cat.r << ")\n";
    std::cout << "loss(T*): " << show(collection_loss(cat, optr.comps)) << "\n";
    return 0;
}

int cmd_gap(const Options& opt) {
    Instance inst = load_instance(opt);
    Instance closed = metric_closure(inst);
    ComponentCatalog cat = build_catalog(closed, opt.r);
    LpResult lp = solve_partition_lp(cat, {}, opt.max_ground);
    OptRResult optr = brute_force_opt_r(cat);
    Rat gap = optr.cost / lp.value;
    std::cout << "lp_value: " << show(lp.value) << "\n";
    std::cout << "opt_r:    " << show(optr.cost) << "\n";
    try {
        std::cout << "opt:      " << show(brute_force_opt(inst, opt.max_steiner).cost) << "\n";
    } catch (const GuardError& ex) {
        std::cerr << "warning: opt oracle skipped: " << ex.what() << "\n";
    }
    std::cout << "gap:      " << show(gap) << "\n";
    return 0;
}

int cmd_components(const Options& opt) {
    Instance inst = load_instance(opt);
    Instance closed = metric_closure(inst);
    ComponentCatalog cat = build_catalog(closed, opt.r);
    std::cout << "catalog: " << cat.comps.size() << " components (r = " << cat.r << ")\n";
    for (size_t ci = 0; ci < cat.comps.size(); ++ci) {
        const FullComponent& c = cat.comps[ci];
        std::cout << "  [" << ci << "] {";
        for (size_t i = 0; i < c.terms.size(); ++i)
            std::cout << (i ? "," : "") << closed.origin_of(cat.term_vertex[c.terms[i]]) + 1;
        std::cout << "} cost " << show(c.cost) << " loss " << show(c.loss_cost)
                  << " steiner " << c.num_internal << "\n";
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    Instance inst = load_instance(opt);
    auto items = verify_instance(inst, opt.r, opt.max_ground, opt.seed == 0 ? 1 : opt.seed);
    for (const VerifyItem& it : items) {
        std::cout << (it.skipped ? "SKIP " : it.pass ? "PASS " : "FAIL ") << it.name;
        if (!it.detail.empty()) std::cout << " [" << it.detail << "]";
        std::cout << "\n";
    }
    return all_passed(items) ? 0 : 1;
}

int cmd_gen(const Options& opt) {
    GeneratorSpec spec;
    spec.family = family_from_name(opt.family);
    spec.n = opt.n;
    spec.b = opt.b;
    spec.seed = opt.seed;
    spec.cost_lo = opt.cost_lo;
    spec.cost_hi = opt.cost_hi;
    Instance inst = generate(spec);
    emit(opt.output, write_stp(inst, opt.family));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steiner tree approximation via the partition LP primal-dual method"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool takes_input) {
        if (takes_input)
            cmd->add_option("--input", opt.input, "STP input path ('-' for stdin)");
        cmd->add_option("--r", opt.r, "full component size bound (>= 2)");
        cmd->add_option("--max-ground", opt.max_ground,
                        "override the LP partition-enumeration guard");
        cmd->add_option("--max-steiner", opt.max_steiner,
                        "override the exact-opt Steiner subset guard");
    };

    CLI::App* solve = app.add_subcommand("solve", "run the iterated primal-dual algorithm");
    add_common(solve, true);
    solve->add_option("--report", opt.report, "write the JSON run report here");
    solve->add_flag("--oracle", opt.with_oracle, "also run the exact oracles");

    CLI::App* exact = app.add_subcommand("exact", "brute-force optima");
    add_common(exact, true);

    CLI::App* gap = app.add_subcommand("gap", "integrality gap of the partition LP");
    add_common(gap, true);

    CLI::App* components = app.add_subcommand("components", "list the full component catalog");
    add_common(components, true);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite on an instance");
    add_common(verify, true);
    verify->add_option("--seed", opt.seed, "seed for the randomized checks");

    CLI::App* gen = app.add_subcommand("gen", "generate a named or random instance");
    gen->add_option("--family", opt.family, "skutella | random_bquasi | star | path");
    gen->add_option("--n", opt.n, "total vertex count");
    gen->add_option("--b", opt.b, "max Steiner neighborhood size");
    gen->add_option("--seed", opt.seed, "generator seed");
    gen->add_option("--cost-lo", opt.cost_lo, "minimum edge cost");
    gen->add_option("--cost-hi", opt.cost_hi, "maximum edge cost");
    gen->add_option("--output", opt.output, "output path ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    if (opt.max_ground > 12)
        std::cerr << "warning: raising the partition guard to " << opt.max_ground
                  << " vertices; Bell-number growth makes this expensive\n";
    if (opt.max_steiner > 16)
        std::cerr << "warning: raising the Steiner subset guard to " << opt.max_steiner << "\n";

    try {
        if (solve->parsed()) return cmd_solve(opt);
        if (exact->parsed()) return cmd_exact(opt);
        if (gap->parsed()) return cmd_gap(opt);
        if (components->parsed()) return cmd_components(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (gen->parsed()) return cmd_gen(opt);
    } catch (const GuardError& ex) {
        std::cerr << "guard violation: " << ex.what() << "\n";
        return 2;
    } catch (const InternalError& ex) {
        std::cerr << "internal invariant failure: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
