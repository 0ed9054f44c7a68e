#ifndef WIDTHFORGE_CLI_HPP
#define WIDTHFORGE_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "widthforge/generators.hpp"
#include "widthforge/harness.hpp"
#include "widthforge/newick.hpp"
#include "widthforge/reductions.hpp"
#include "widthforge/report_json.hpp"

namespace widthforge {

namespace cli {

enum Exit : int { ok = 0, failed = 1, inconclusive = 2 };

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open '" + path + "'");
    return in;
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw validation_error("cannot write '" + path + "'");
    f << text;
}

inline Graph load_graph(const std::string& path) {
    auto in = open_in(path);
    return read_graph(in);
}

inline UqcInstance load_uqc(const std::string& path) {
    auto in = open_in(path);
    return read_uqc(in);
}

inline BranchDecomposition load_tree(const std::string& path) {
    auto in = open_in(path);
    return read_newick(in);
}

struct BudgetFlags {
    std::optional<double> seconds;
    std::optional<std::uint64_t> max_nodes;
    unsigned threads = 1;

    void attach(CLI::App* sub) {
        sub->add_option("--budget", seconds, "time budget in seconds (default: $WIDTHFORGE_BUDGET_SECS or 900)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-nodes", max_nodes, "search node budget");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
    }

    [[nodiscard]] Budget resolve() const {
        Budget b;
        std::optional<double> secs = seconds;
        if (!secs) {
            if (const char* env = std::getenv("WIDTHFORGE_BUDGET_SECS"); env && *env) {
                try {
                    secs = std::stod(env);
                } catch (const std::exception&) {
                    throw validation_error("WIDTHFORGE_BUDGET_SECS is not a number: '" + std::string(env) + "'");
                }
                if (*secs <= 0) throw validation_error("WIDTHFORGE_BUDGET_SECS must be positive");
            }
        }
        if (secs) b.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(*secs * 1000.0));
        if (max_nodes) b.max_nodes = *max_nodes;
        b.threads = threads;
        return b;
    }
};

}  // namespace cli

/// Entry point of the widthforge tool. Reports go to `out` as JSON (or text
/// for graph/quartet outputs), diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact mim/sim/omim/Omim width computation and gadget verification"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "omit timing fields so output is reproducible byte for byte");

    std::string param_name = "mim";
    bool linear = false;
    auto add_param = [&](CLI::App* sub) {
        sub->add_option("--param", param_name, "cut value: mim, sim, omim or Omim")
            ->check(CLI::IsMember({"mim", "sim", "omim", "Omim"}));
        sub->add_flag("--linear", linear, "restrict to caterpillars");
    };

    std::string graph_path, tree_path, quartet_path;

    auto* eval = app.add_subcommand("width-eval", "width of a given decomposition");
    eval->add_option("graph", graph_path)->required();
    eval->add_option("tree", tree_path)->required();
    add_param(eval);

    cli::BudgetFlags bflags;
    auto* exact = app.add_subcommand("width-exact", "exact width by pruned search");
    exact->add_option("graph", graph_path)->required();
    add_param(exact);
    bflags.attach(exact);

    int w = 0;
    auto* dec = app.add_subcommand("decide", "is the width at most w?");
    dec->add_option("graph", graph_path)->required();
    dec->add_option("--w", w, "width bound")->required()->check(CLI::NonNegativeNumber);
    add_param(dec);
    bflags.attach(dec);

    std::string gadget, out_path, roles_path;
    auto* red = app.add_subcommand("reduce", "build a gadget graph from a quartet instance");
    red->add_option("quartets", quartet_path)->required();
    red->add_option("--gadget", gadget)->required()->check(CLI::IsMember({"sim", "mim", "mimH"}));
    red->add_option("-o,--output", out_path, "graph file (default: standard output)");
    red->add_option("--roles", roles_path, "role map JSON file (default: <output>.roles.json)");

    bool cat_only = false;
    auto* solve = app.add_subcommand("solve-uqc", "brute-force quartet compatibility");
    solve->add_option("quartets", quartet_path)->required();
    solve->add_flag("--caterpillar", cat_only, "only caterpillars");
    bflags.attach(solve);

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run a verification suite on a quartet instance");
    ver->add_option("suite", suite)->required()->check(CLI::IsMember({"sim", "mim", "structure"}));
    ver->add_option("quartets", quartet_path)->required();
    bflags.attach(ver);

    std::uint64_t seed = 0;
    std::size_t n = 6, points = 5, quartets = 3;
    double p = 0.5;
    auto* gen = app.add_subcommand("gen", "seeded random instances");
    gen->require_subcommand(1);
    auto* gen_graph = gen->add_subcommand("random-graph", "G(n, p)");
    gen_graph->add_option("--seed", seed)->required();
    gen_graph->add_option("--n", n)->check(CLI::Range(0, static_cast<int>(max_vertices)));
    gen_graph->add_option("--p", p)->check(CLI::Range(0.0, 1.0));
    auto* gen_uqc = gen->add_subcommand("random-uqc", "random quartet instance");
    gen_uqc->add_option("--seed", seed)->required();
    gen_uqc->add_option("--points", points);
    gen_uqc->add_option("--quartets", quartets);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? cli::ok : cli::failed;
    }

    const JsonOptions jopt{!no_timing};
    auto emit = [&](json j) {
        if (no_timing) strip_timing(j);
        out << j.dump(2) << '\n';
    };

    try {
        const WidthParam param{parse_cut_kind(param_name), linear};

        if (*eval) {
            const Graph g = cli::load_graph(graph_path);
            emit(to_json(decomposition_width(g, cli::load_tree(tree_path), param), jopt));
            return cli::ok;
        }
        if (*exact) {
            const WidthReport r = exact_width(cli::load_graph(graph_path), param, bflags.resolve());
            emit(to_json(r, jopt));
            return r.conclusive() ? cli::ok : cli::inconclusive;
        }
        if (*dec) {
            const DecisionResult d = decide_width_leq(cli::load_graph(graph_path), param, w, bflags.resolve());
            emit(to_json(d, param, w, jopt));
            return d.decision == Decision::inconclusive ? cli::inconclusive : cli::ok;
        }
        if (*red) {
            const UqcInstance inst = cli::load_uqc(quartet_path);
            const GadgetGraph gg = gadget == "sim"   ? build_sim_gadget(inst)
                                   : gadget == "mim" ? build_mim_gadget(inst)
                                                     : build_mim_gadget_h(inst);
            if (inst.duplicates_dropped() > 0)
                err << "note: dropped " << inst.duplicates_dropped() << " duplicate quartet(s)\n";
            const std::string roles = role_map_json(gg).dump(2) + "\n";
            if (out_path.empty()) {
                write_graph(out, gg.graph);
                if (!roles_path.empty()) cli::write_file(roles_path, roles);
            } else {
                cli::write_file(out_path, to_text(gg.graph));
                cli::write_file(roles_path.empty() ? out_path + ".roles.json" : roles_path, roles);
            }
            return cli::ok;
        }
        if (*solve) {
            const UqcResult r = solve_uqc(cli::load_uqc(quartet_path),
                                          cat_only ? UqcMode::caterpillar_only : UqcMode::any_tree, bflags.resolve());
            emit(to_json(r, jopt));
            return r.status == UqcStatus::inconclusive ? cli::inconclusive : cli::ok;
        }
        if (*ver) {
            const UqcInstance inst = cli::load_uqc(quartet_path);
            const Budget b = bflags.resolve();
            const auto outs = suite == "sim"   ? verify_sim_proposition(inst, b)
                              : suite == "mim" ? verify_mim_proposition(inst, b)
                                               : verify_structure(inst);
            const OutcomeStatus s = overall(outs);
            json j;
            j["suite"] = suite;
            j["status"] = to_string(s);
            j["outcomes"] = json::array();
            for (const auto& o : outs) j["outcomes"].push_back(to_json(o, jopt));
            emit(j);
            return s == OutcomeStatus::verified ? cli::ok : s == OutcomeStatus::refuted ? cli::failed : cli::inconclusive;
        }
        if (*gen_graph) {
            write_graph(out, random_graph(seed, n, p));
            return cli::ok;
        }
        if (*gen_uqc) {
            write_uqc(out, random_uqc(seed, points, quartets));
            return cli::ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return cli::failed;
    }
    return cli::failed;
}

}  // namespace widthforge

#endif
