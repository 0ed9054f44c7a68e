#ifndef WIDTHFORGE_HARNESS_HPP
#define WIDTHFORGE_HARNESS_HPP

#include <chrono>
#include <string>
#include <vector>

#include "widthforge/cut_values.hpp"
#include "widthforge/reductions.hpp"
#include "widthforge/report_json.hpp"
#include "widthforge/uqc.hpp"
#include "widthforge/widths.hpp"

namespace widthforge {

enum class OutcomeStatus { verified, refuted, inconclusive };

inline std::string to_string(OutcomeStatus s) {
    switch (s) {
        case OutcomeStatus::verified: return "verified";
        case OutcomeStatus::refuted: return "refuted";
        case OutcomeStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct VerificationOutcome {
    std::string claim;
    OutcomeStatus status = OutcomeStatus::verified;
    json evidence = json::object();
    double elapsed_seconds = 0.0;
};

inline json to_json(const VerificationOutcome& o, JsonOptions opt = {}) {
    json j;
    j["claim"] = o.claim;
    j["status"] = to_string(o.status);
    j["evidence"] = o.evidence;
    if (opt.timing) j["elapsed_seconds"] = o.elapsed_seconds;
    return j;
}

/// Worst status over a list: refuted beats inconclusive beats verified.
inline OutcomeStatus overall(const std::vector<VerificationOutcome>& outs) {
    OutcomeStatus s = OutcomeStatus::verified;
    for (const auto& o : outs) {
        if (o.status == OutcomeStatus::refuted) return OutcomeStatus::refuted;
        if (o.status == OutcomeStatus::inconclusive) s = OutcomeStatus::inconclusive;
    }
    return s;
}

namespace detail {

class Stopwatch {
public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline OutcomeStatus check(bool ok) { return ok ? OutcomeStatus::verified : OutcomeStatus::refuted; }

inline json cycle_names(const Graph& g, const std::optional<std::vector<std::size_t>>& cyc) {
    if (!cyc) return nullptr;
    json seq = json::array();
    for (auto v : *cyc) seq.push_back(g.name(v));
    return seq;
}

// Caterpillar search, plus the any-tree search when no caterpillar exists.
struct Classification {
    UqcResult caterpillar;
    std::optional<UqcResult> any_tree;
};

inline Classification classify(const UqcInstance& inst, const Budget& budget, std::vector<VerificationOutcome>& out) {
    Stopwatch sw;
    Classification c{solve_uqc(inst, UqcMode::caterpillar_only, budget), std::nullopt};
    VerificationOutcome o{"uqc.caterpillar", OutcomeStatus::verified, to_json(c.caterpillar), 0.0};
    if (c.caterpillar.status == UqcStatus::inconclusive) o.status = OutcomeStatus::inconclusive;
    o.elapsed_seconds = sw.seconds();
    out.push_back(std::move(o));
    if (c.caterpillar.status == UqcStatus::unsatisfiable) {
        Stopwatch sw2;
        c.any_tree = solve_uqc(inst, UqcMode::any_tree, budget);
        VerificationOutcome t{"uqc.any_tree", OutcomeStatus::verified, to_json(*c.any_tree), 0.0};
        if (c.any_tree->status == UqcStatus::inconclusive) t.status = OutcomeStatus::inconclusive;
        t.elapsed_seconds = sw2.seconds();
        out.push_back(std::move(t));
    }
    return c;
}

// A lower bound "width > w" from an exhaustive decision.
inline VerificationOutcome lower_bound_claim(std::string claim, const Graph& g, WidthParam p, int w,
                                             const Budget& budget) {
    Stopwatch sw;
    const DecisionResult d = decide_width_leq(g, p, w, budget);
    VerificationOutcome o{std::move(claim), OutcomeStatus::verified, to_json(d, p, w), 0.0};
    if (d.decision == Decision::yes) o.status = OutcomeStatus::refuted;
    if (d.decision == Decision::inconclusive) o.status = OutcomeStatus::inconclusive;
    o.elapsed_seconds = sw.seconds();
    return o;
}

// Evaluates a witness and compares with the expected width.
inline VerificationOutcome witness_claim(std::string claim, const Graph& g, const BranchDecomposition& t,
                                         WidthParam p, int expected) {
    Stopwatch sw;
    const WidthReport r = decomposition_width(g, t, p);
    VerificationOutcome o{std::move(claim), check(r.width == expected), to_json(r), 0.0};
    o.evidence["expected"] = expected;
    o.elapsed_seconds = sw.seconds();
    return o;
}

inline VerificationOutcome not_applicable(const std::string& claim) {
    VerificationOutcome o{claim, OutcomeStatus::verified, json::object(), 0.0};
    o.evidence["applicable"] = false;
    o.evidence["reason"] = "quartets satisfiable by a tree but not by a caterpillar";
    return o;
}

}  // namespace detail

/// Checks for the sim/omim/Omim reduction on one instance.
inline std::vector<VerificationOutcome> verify_sim_proposition(const UqcInstance& inst, const Budget& budget = {}) {
    std::vector<VerificationOutcome> out;
    const auto cls = detail::classify(inst, budget, out);
    if (cls.caterpillar.status == UqcStatus::inconclusive) return out;
    const GadgetGraph gg = build_sim_gadget(inst);
    const Graph& g = gg.graph;

    if (cls.caterpillar.status == UqcStatus::satisfiable) {
        const TotalOrder order = witness_order_sim(inst, *cls.caterpillar.order);
        const BranchDecomposition t = caterpillar_from_order(order);
        const int expected = g.edge_count() > 0 ? 1 : 0;
        out.push_back(detail::witness_claim("sim.witness.linear-Omim-width", g, t, {CutKind::Omim, true}, expected));

        // Omim bounds every other cut value from above; an edge bounds them from below.
        detail::Stopwatch sw;
        VerificationOutcome all{"sim.all-widths", OutcomeStatus::verified, json::object(), 0.0};
        bool ok = true;
        for (CutKind k : all_cut_kinds) {
            const int v = decomposition_width(g, t, {k, true}).width;
            all.evidence["witness_linear_" + to_string(k)] = v;
            ok = ok && v <= expected;
        }
        all.evidence["has_edge"] = g.edge_count() > 0;
        all.evidence["width"] = expected;
        all.evidence["vacuous"] = inst.quartets().empty();
        all.status = detail::check(ok);
        all.elapsed_seconds = sw.seconds();
        out.push_back(std::move(all));
        return out;
    }

    if (cls.any_tree->status == UqcStatus::inconclusive) return out;
    if (cls.any_tree->status == UqcStatus::satisfiable) {
        out.push_back(detail::not_applicable("sim.proposition"));
        return out;
    }

    detail::Stopwatch sw;
    const int m = max_induced_matching(g);
    VerificationOutcome ub{"sim.max-induced-matching<=2", detail::check(m <= 2), json::object(), 0.0};
    ub.evidence["max_induced_matching"] = m;
    ub.elapsed_seconds = sw.seconds();
    out.push_back(std::move(ub));

    auto lb = detail::lower_bound_claim("sim.sim-width>1", g, {CutKind::sim, false}, 1, budget);
    if (lb.status == OutcomeStatus::verified && m <= 2) lb.evidence["sim_width"] = 2;
    out.push_back(std::move(lb));
    return out;
}

/// Checks for the mim reduction (G and H) on one instance.
inline std::vector<VerificationOutcome> verify_mim_proposition(const UqcInstance& inst, const Budget& budget = {}) {
    std::vector<VerificationOutcome> out;
    const auto cls = detail::classify(inst, budget, out);
    if (cls.caterpillar.status == UqcStatus::inconclusive) return out;
    const GadgetGraph g = build_mim_gadget(inst);
    const GadgetGraph h = build_mim_gadget_h(inst);

    if (cls.caterpillar.status == UqcStatus::satisfiable) {
        const bool has_q = !inst.quartets().empty();
        const TotalOrder& cat = *cls.caterpillar.order;
        out.push_back(detail::witness_claim("mim.witness.linear-mim-width(G)", g.graph,
                                            caterpillar_from_order(witness_order_mim(inst, cat)),
                                            {CutKind::mim, true}, has_q ? 2 : 0));
        out.push_back(detail::witness_claim("mim.witness.mim-width(H)", h.graph, witness_tree_h(inst, cat),
                                            {CutKind::mim, false}, has_q ? 2 : 0));
        if (has_q) {
            detail::Stopwatch sw;
            const auto cyc = find_induced_cycle_geq(g.graph, 6);
            VerificationOutcome c6{"mim.induced-C6(G)", detail::check(cyc.has_value()), json::object(), 0.0};
            // any cut of an induced C6 splitting it into two paths of three
            // crosses an induced matching of size 2
            c6.evidence["cycle"] = detail::cycle_names(g.graph, cyc);
            c6.elapsed_seconds = sw.seconds();
            out.push_back(std::move(c6));
        }
        return out;
    }

    if (cls.any_tree->status == UqcStatus::inconclusive) return out;
    if (cls.any_tree->status == UqcStatus::satisfiable) {
        out.push_back(detail::not_applicable("mim.proposition"));
        return out;
    }
    out.push_back(detail::lower_bound_claim("mim.linear-mim-width(G)>2", g.graph, {CutKind::mim, true}, 2, budget));
    out.push_back(detail::lower_bound_claim("mim.mim-width(H)>2", h.graph, {CutKind::mim, false}, 2, budget));
    return out;
}

/// Structural properties of the sim gadget.
inline std::vector<VerificationOutcome> verify_structure(const UqcInstance& inst) {
    std::vector<VerificationOutcome> out;
    const GadgetGraph gg = build_sim_gadget(inst);
    const Graph& g = gg.graph;

    auto hole_free = [&](std::string claim, const Graph& x) {
        detail::Stopwatch sw;
        const auto cyc = find_induced_cycle_geq(x, 5);
        VerificationOutcome o{std::move(claim), detail::check(!cyc), json::object(), 0.0};
        o.evidence["cycle"] = detail::cycle_names(x, cyc);
        o.elapsed_seconds = sw.seconds();
        return o;
    };
    out.push_back(hole_free("structure.no-long-induced-cycle(G)", g));
    out.push_back(hole_free("structure.no-long-induced-cycle(complement)", complement(g)));

    {
        detail::Stopwatch sw;
        json bad = json::array();
        for (auto v : gg.vertices_with(Role::point))
            if (!is_simplicial(g, v)) bad.push_back(g.name(v));
        VerificationOutcome o{"structure.points-simplicial", detail::check(bad.empty()), json::object(), 0.0};
        o.evidence["violations"] = std::move(bad);
        o.elapsed_seconds = sw.seconds();
        out.push_back(std::move(o));
    }
    {
        detail::Stopwatch sw;
        const auto us = gg.vertices_with(Role::u);
        VertexSet umask = 0;
        for (auto u : us) umask |= bit(u);
        json bad = json::array();
        for (auto u : us) {
            const VertexSet non = umask & ~g.neighbors(u) & ~bit(u);
            bool ok = popcount(non) == 2;
            for_each_vertex(non, [&](std::size_t x) { ok = ok && gg.roles[x].quartet == gg.roles[u].quartet; });
            if (!ok) bad.push_back(json{{"vertex", g.name(u)}, {"non_neighbors", g.names_of(non)}});
        }
        VerificationOutcome o{"structure.u-non-neighbors", detail::check(bad.empty()), json::object(), 0.0};
        o.evidence["violations"] = std::move(bad);
        o.elapsed_seconds = sw.seconds();
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace widthforge

#endif
