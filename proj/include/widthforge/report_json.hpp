#ifndef WIDTHFORGE_REPORT_JSON_HPP
#define WIDTHFORGE_REPORT_JSON_HPP

#include <string>

#include "json.hpp"
#include "widthforge/newick.hpp"
#include "widthforge/reductions.hpp"
#include "widthforge/uqc.hpp"
#include "widthforge/widths.hpp"

namespace widthforge {

using json = nlohmann::ordered_json;

/// Timing fields are the only non-deterministic part of a report; callers
/// that need byte-identical output turn them off.
struct JsonOptions {
    bool timing = true;
};

/// Removes every "elapsed_seconds" member, at any depth.
inline void strip_timing(json& j) {
    if (j.is_object()) {
        j.erase("elapsed_seconds");
        for (auto& [k, v] : j.items()) strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timing(v);
    }
}

inline json to_json(const SearchStats& s, JsonOptions opt = {}) {
    json j;
    j["nodes"] = s.nodes;
    j["pruned"] = s.pruned;
    if (opt.timing) j["elapsed_seconds"] = s.elapsed_seconds;
    j["budget_exhausted"] = s.budget_exhausted;
    return j;
}

inline json to_json(const WidthReport& r, JsonOptions opt = {}) {
    json j;
    j["param"] = to_string(r.param.kind);
    j["linear"] = r.param.linear;
    j["width"] = r.width;
    j["exact"] = r.conclusive();
    if (r.inconclusive_at) j["inconclusive_at"] = *r.inconclusive_at;
    j["witness_newick"] = r.witness ? json(to_newick(*r.witness)) : json(nullptr);
    json edges = json::array();
    for (const auto& e : r.per_edge) edges.push_back(json{{"cut_a", e.cut_a}, {"value", e.value}});
    j["per_edge"] = std::move(edges);
    j["stats"] = to_json(r.stats, opt);
    return j;
}

inline json to_json(const DecisionResult& d, WidthParam p, int w, JsonOptions opt = {}) {
    json j;
    j["param"] = to_string(p.kind);
    j["linear"] = p.linear;
    j["w"] = w;
    j["decision"] = to_string(d.decision);
    j["witness_newick"] = d.witness ? json(to_newick(*d.witness)) : json(nullptr);
    j["stats"] = to_json(d.stats, opt);
    return j;
}

inline json to_json(const UqcResult& r, JsonOptions opt = {}) {
    json j;
    j["status"] = to_string(r.status);
    j["newick"] = r.tree ? json(to_newick(*r.tree)) : json(nullptr);
    j["order"] = r.order ? json(r.order->sequence()) : json(nullptr);
    j["stats"] = to_json(r.stats, opt);
    return j;
}

/// {vertex: {role, point, quartet_index}}
inline json role_map_json(const GadgetGraph& gg) {
    json j = json::object();
    for (std::size_t v = 0; v < gg.roles.size(); ++v) {
        const auto& r = gg.roles[v];
        json e;
        e["role"] = to_string(r.role);
        e["point"] = r.point.empty() ? json(nullptr) : json(r.point);
        e["quartet_index"] = r.quartet ? json(*r.quartet) : json(nullptr);
        j[gg.graph.name(v)] = std::move(e);
    }
    return j;
}

}  // namespace widthforge

#endif
