#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "widthforge/cli.hpp"

using namespace widthforge;

namespace {

const std::string data_dir = WIDTHFORGE_DATA_DIR;

std::string data(const std::string& f) { return data_dir + "/" + f; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "widthforge");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "widthforge-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const OutcomeStatus* status_of(const std::vector<VerificationOutcome>& outs, const std::string& claim) {
    for (const auto& o : outs)
        if (o.claim == claim) return &o.status;
    return nullptr;
}

const std::vector<std::string> abcd{"a", "b", "c", "d"};

}  // namespace

TEST_CASE("width-eval reports the figure cut") {
    const auto r = run({"width-eval", data("fig1.graph"), data("fig1.tree"), "--param", "mim"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["param"] == "mim");
    CHECK(j["linear"] == false);
    CHECK(j["width"] == 4);
    CHECK(j["witness_newick"].is_string());
    bool found = false;
    for (const auto& e : j["per_edge"]) {
        auto side = e["cut_a"].get<std::vector<std::string>>();
        std::sort(side.begin(), side.end());
        if (side == std::vector<std::string>{"a1", "a2", "a3", "a4"} || side == std::vector<std::string>{"b1", "b2", "b3", "b4"}) {
            CHECK(e["value"] == 4);
            found = true;
        }
    }
    CHECK(found);
    CHECK(j["stats"].contains("nodes"));

    for (auto [kind, want] : std::vector<std::pair<std::string, int>>{{"sim", 1}, {"Omim", 3}, {"omim", 2}}) {
        const auto s = json::parse(run({"width-eval", data("fig1.graph"), data("fig1.tree"), "--param", kind, "--linear"}).out);
        CHECK(s["width"].get<int>() >= want);
    }
}

TEST_CASE("reduce writes gadget graphs and role maps") {
    const auto r = run({"reduce", data("one-quartet.q"), "--gadget", "sim"});
    REQUIRE(r.code == 0);
    const Graph g = parse_graph(r.out);
    CHECK(g.size() == 8);
    CHECK(g.edge_count() == 6);

    const auto out = scratch("h.graph");
    const auto r2 = run({"reduce", data("unsat2.q"), "--gadget", "mimH", "-o", out.string()});
    REQUIRE(r2.code == 0);
    CHECK(parse_graph(slurp(out)).size() == 21);
    const auto roles = json::parse(slurp(out.string() + ".roles.json"));
    CHECK(roles.size() == 21);
    CHECK(roles["omega"]["role"] == "Omega");
    CHECK(roles["omega"]["point"].is_null());
    CHECK(roles["g:b:1"]["role"] == "Gamma");
    CHECK(roles["g:b:1"]["quartet_index"] == 1);
    CHECK(roles["p:a"]["role"] == "P");
}

TEST_CASE("verify sim certifies sim-width 2 for the unsatisfiable instance") {
    const auto r = run({"verify", "sim", data("unsat2.q")});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["status"] == "verified");
    bool certified = false;
    for (const auto& o : j["outcomes"])
        if (o["claim"] == "sim.sim-width>1") {
            CHECK(o["evidence"]["decision"] == "no");
            CHECK(o["evidence"]["sim_width"] == 2);
            certified = true;
        }
    CHECK(certified);
}

TEST_CASE("verify suites on the satisfiable instance") {
    for (std::string suite : {"sim", "mim", "structure"}) {
        const auto r = run({"verify", suite, data("one-quartet.q")});
        INFO(suite << "\n" << r.out << r.err);
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["status"] == "verified");
    }
}

TEST_CASE("verify mim on the unsatisfiable instance never says yes") {
    const auto r = run({"verify", "mim", data("unsat2.q"), "--budget", "120"});
    CHECK((r.code == 0 || r.code == 2));
    const auto j = json::parse(r.out);
    for (const auto& o : j["outcomes"]) CHECK(o["status"] != "refuted");
}

TEST_CASE("decide, width-exact and solve-uqc") {
    auto d = run({"decide", data("fig1.graph"), "--param", "sim", "--linear", "--w", "1"});
    CHECK(d.code == 0);
    CHECK(json::parse(d.out)["decision"] == "yes");
    d = run({"decide", data("fig1.graph"), "--param", "mim", "--w", "0"});
    CHECK(d.code == 0);
    CHECK(json::parse(d.out)["decision"] == "no");

    const auto e = run({"width-exact", data("fig1.graph"), "--param", "sim", "--linear"});
    CHECK(e.code == 0);
    const auto ej = json::parse(e.out);
    CHECK(ej["width"] == 1);
    CHECK(ej["exact"] == true);
    // the emitted witness replays to the same width
    const auto tree = scratch("witness.tree");
    std::ofstream(tree) << ej["witness_newick"].get<std::string>() << '\n';
    const auto replay = run({"width-eval", data("fig1.graph"), tree.string(), "--param", "sim", "--linear"});
    CHECK(json::parse(replay.out)["width"] == 1);

    const auto s = run({"solve-uqc", data("five-points.q"), "--caterpillar"});
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["status"] == "satisfiable");
    CHECK(json::parse(run({"solve-uqc", data("unsat2.q")}).out)["status"] == "unsatisfiable");
}

TEST_CASE("budget exhaustion exits with 2") {
    const auto g = scratch("mim2.graph");
    REQUIRE(run({"reduce", data("unsat2.q"), "--gadget", "mim", "-o", g.string()}).code == 0);
    const auto r = run({"width-exact", g.string(), "--param", "mim", "--linear", "--max-nodes", "100"});
    CHECK(r.code == 2);
    const auto j = json::parse(r.out);
    CHECK(j["exact"] == false);
    CHECK(j["stats"]["budget_exhausted"] == true);
    CHECK(j["witness_newick"].is_null());
}

TEST_CASE("time budget from the environment") {
    const auto g = scratch("mim2env.graph");
    REQUIRE(run({"reduce", data("unsat2.q"), "--gadget", "mim", "-o", g.string()}).code == 0);
    ::setenv("WIDTHFORGE_BUDGET_SECS", "0.0001", 1);
    CHECK(run({"decide", g.string(), "--param", "mim", "--linear", "--w", "2"}).code == 2);
    // an explicit flag wins over the environment
    CHECK(run({"decide", g.string(), "--param", "mim", "--linear", "--w", "2", "--budget", "600"}).code == 0);
    ::setenv("WIDTHFORGE_BUDGET_SECS", "soon", 1);
    CHECK(run({"decide", g.string(), "--param", "mim", "--w", "2"}).code == 1);
    ::unsetenv("WIDTHFORGE_BUDGET_SECS");
}

TEST_CASE("deterministic output") {
    const auto a = run({"gen", "random-graph", "--seed", "42", "--n", "9", "--p", "0.4"});
    const auto b = run({"gen", "random-graph", "--seed", "42", "--n", "9", "--p", "0.4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(parse_graph(a.out).size() == 9);
    CHECK(run({"gen", "random-graph", "--seed", "43", "--n", "9", "--p", "0.4"}).out != a.out);

    const auto q1 = run({"gen", "random-uqc", "--seed", "5", "--points", "6", "--quartets", "4"});
    CHECK(q1.out == run({"gen", "random-uqc", "--seed", "5", "--points", "6", "--quartets", "4"}).out);
    CHECK_NOTHROW(parse_uqc(q1.out));

    const auto g = scratch("rand.graph");
    std::ofstream(g) << a.out;
    const auto e1 = run({"--no-timing", "width-exact", g.string(), "--param", "omim"});
    const auto e2 = run({"--no-timing", "width-exact", g.string(), "--param", "omim"});
    CHECK(e1.out == e2.out);
    CHECK(e1.out.find("elapsed") == std::string::npos);
    const auto v1 = run({"--no-timing", "verify", "sim", data("one-quartet.q")});
    CHECK(v1.out == run({"verify", "sim", data("one-quartet.q"), "--no-timing"}).out);
}

TEST_CASE("invalid input exits with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"width-eval", "/nonexistent.graph", data("fig1.tree")}).code == 1);
    CHECK(run({"width-eval", data("fig1.graph"), data("fig1.tree"), "--param", "xyz"}).code == 1);
    CHECK(run({"width-eval", data("one-quartet.q"), data("fig1.tree")}).code == 1);
    const auto r = run({"width-eval", data("fig1.graph"), data("one-quartet.q")});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(run({"reduce", data("one-quartet.q"), "--gadget", "foo"}).code == 1);
    CHECK(run({"verify", "nope", data("one-quartet.q")}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sim proposition outcomes") {
    const UqcInstance two(abcd, {Quartet("a", "b", "c", "d"), Quartet("a", "c", "b", "d")});
    const auto outs = verify_sim_proposition(two);
    CHECK(overall(outs) == OutcomeStatus::verified);
    REQUIRE(status_of(outs, "sim.max-induced-matching<=2"));
    REQUIRE(status_of(outs, "sim.sim-width>1"));
    CHECK(status_of(outs, "uqc.any_tree"));

    const UqcInstance one(abcd, {Quartet("a", "b", "c", "d")});
    const auto sat = verify_sim_proposition(one);
    CHECK(overall(sat) == OutcomeStatus::verified);
    REQUIRE(status_of(sat, "sim.all-widths"));
    for (const auto& o : sat)
        if (o.claim == "sim.witness.linear-Omim-width") {
            // replay the emitted witness
            const auto t = parse_newick(o.evidence["witness_newick"].get<std::string>());
            CHECK(decomposition_width(build_sim_gadget(one).graph, t, {CutKind::Omim, true}).width == 1);
        }

    const UqcInstance none(abcd, {});
    const auto vac = verify_sim_proposition(none);
    CHECK(overall(vac) == OutcomeStatus::verified);
    for (const auto& o : vac)
        if (o.claim == "sim.all-widths") {
            CHECK(o.evidence["width"] == 0);
            CHECK(o.evidence["vacuous"] == true);
        }
}

TEST_CASE("instances satisfiable only by a non-caterpillar") {
    const UqcInstance inst({"a", "b", "c", "d", "e", "f"},
                           {Quartet("a", "b", "c", "e"), Quartet("c", "d", "a", "e"), Quartet("e", "f", "a", "c"),
                            Quartet("a", "b", "d", "f"), Quartet("c", "d", "b", "f"), Quartet("e", "f", "b", "d")});
    const auto outs = verify_sim_proposition(inst);
    REQUIRE(status_of(outs, "sim.proposition"));
    CHECK(outs.back().evidence["applicable"] == false);
    CHECK(overall(outs) == OutcomeStatus::verified);
    CHECK(status_of(verify_mim_proposition(inst), "mim.proposition"));
}

TEST_CASE("structure suite") {
    const UqcInstance two(abcd, {Quartet("a", "b", "c", "d"), Quartet("a", "c", "b", "d")});
    const auto outs = verify_structure(two);
    CHECK(outs.size() == 4);
    CHECK(overall(outs) == OutcomeStatus::verified);
}

TEST_CASE("inconclusive outcomes under a tiny budget") {
    const UqcInstance two(abcd, {Quartet("a", "b", "c", "d"), Quartet("a", "c", "b", "d")});
    Budget tiny;
    tiny.max_nodes = 20;
    const auto outs = verify_mim_proposition(two, tiny);
    CHECK(overall(outs) == OutcomeStatus::inconclusive);
    for (const auto& o : outs)
        if (o.status == OutcomeStatus::inconclusive) CHECK(o.evidence["stats"]["budget_exhausted"] == true);
}
