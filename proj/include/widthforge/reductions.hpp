#ifndef WIDTHFORGE_REDUCTIONS_HPP
#define WIDTHFORGE_REDUCTIONS_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "widthforge/decomp.hpp"
#include "widthforge/graph.hpp"
#include "widthforge/uqc.hpp"

namespace widthforge {

enum class Role { point, u, gamma, omega };

inline std::string to_string(Role r) {
    switch (r) {
        case Role::point: return "P";
        case Role::u: return "U";
        case Role::gamma: return "Gamma";
        case Role::omega: return "Omega";
    }
    return "?";
}

struct RoleInfo {
    Role role = Role::point;
    std::string point;                     ///< empty for omega
    std::optional<std::size_t> quartet;    ///< set for u and gamma vertices
};

/// Graph built from a quartet instance, with the role of every vertex
/// (indexed like the graph's vertices).
struct GadgetGraph {
    Graph graph;
    std::vector<RoleInfo> roles;
    UqcInstance instance;

    [[nodiscard]] std::vector<std::size_t> vertices_with(Role r) const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < roles.size(); ++v)
            if (roles[v].role == r) out.push_back(v);
        return out;
    }
};

inline std::string point_vertex(const std::string& p) { return "p:" + p; }
inline std::string u_vertex(const std::string& p, std::size_t q) { return "u:" + p + ":" + std::to_string(q); }
inline std::string gamma_vertex(const std::string& p, std::size_t q) { return "g:" + p + ":" + std::to_string(q); }
inline const std::string omega_vertex = "omega";

namespace detail {

inline void add_role_vertex(GadgetGraph& gg, std::string name, RoleInfo info) {
    gg.graph.add_vertex(std::move(name));
    gg.roles.push_back(std::move(info));
}

// Points, u-vertices and the two 3-edge paths of every quartet, plus the
// u-u edges between different quartets.
inline GadgetGraph point_and_u_layer(const UqcInstance& inst) {
    GadgetGraph gg;
    gg.instance = inst;
    for (const auto& p : inst.points()) add_role_vertex(gg, point_vertex(p), {Role::point, p, std::nullopt});
    const auto& qs = inst.quartets();
    for (std::size_t qi = 0; qi < qs.size(); ++qi)
        for (const auto& p : qs[qi].points()) add_role_vertex(gg, u_vertex(p, qi), {Role::u, p, qi});
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        const auto& q = qs[qi];
        for (const auto& pair : {q.pair1, q.pair2}) {
            gg.graph.add_edge(point_vertex(pair[0]), u_vertex(pair[0], qi));
            gg.graph.add_edge(u_vertex(pair[0], qi), u_vertex(pair[1], qi));
            gg.graph.add_edge(u_vertex(pair[1], qi), point_vertex(pair[1]));
        }
    }
    const auto us = gg.vertices_with(Role::u);
    for (std::size_t a = 0; a < us.size(); ++a)
        for (std::size_t b = a + 1; b < us.size(); ++b)
            if (gg.roles[us[a]].quartet != gg.roles[us[b]].quartet) gg.graph.add_edge(us[a], us[b]);
    return gg;
}

}  // namespace detail

/// Gadget for the sim/omim/Omim reduction: |P| + 4|Q| vertices.
inline GadgetGraph build_sim_gadget(const UqcInstance& inst) {
    if (inst.points().size() + 4 * inst.quartets().size() > max_vertices)
        throw validation_error("gadget would exceed " + std::to_string(max_vertices) + " vertices");
    return detail::point_and_u_layer(inst);
}

/// Gadget for the linear mim-width reduction: adds a gamma vertex per u
/// vertex, pendant to its point, with all gammas forming a clique and every
/// u adjacent to the gammas of other quartets. |P| + 8|Q| vertices.
inline GadgetGraph build_mim_gadget(const UqcInstance& inst) {
    if (inst.points().size() + 8 * inst.quartets().size() > max_vertices)
        throw validation_error("gadget would exceed " + std::to_string(max_vertices) + " vertices");
    GadgetGraph gg = detail::point_and_u_layer(inst);
    const auto& qs = inst.quartets();
    for (std::size_t qi = 0; qi < qs.size(); ++qi)
        for (const auto& p : qs[qi].points()) detail::add_role_vertex(gg, gamma_vertex(p, qi), {Role::gamma, p, qi});
    const auto gammas = gg.vertices_with(Role::gamma);
    const auto us = gg.vertices_with(Role::u);
    for (auto g : gammas) gg.graph.add_edge(point_vertex(gg.roles[g].point), gg.graph.name(g));
    for (std::size_t a = 0; a < gammas.size(); ++a)
        for (std::size_t b = a + 1; b < gammas.size(); ++b) gg.graph.add_edge(gammas[a], gammas[b]);
    for (auto u : us)
        for (auto g : gammas)
            if (gg.roles[u].quartet != gg.roles[g].quartet) gg.graph.add_edge(u, g);
    return gg;
}

/// The mim gadget plus a vertex omega adjacent to every u vertex.
inline GadgetGraph build_mim_gadget_h(const UqcInstance& inst) {
    if (inst.points().size() + 8 * inst.quartets().size() + 1 > max_vertices)
        throw validation_error("gadget would exceed " + std::to_string(max_vertices) + " vertices");
    GadgetGraph gg = build_mim_gadget(inst);
    detail::add_role_vertex(gg, omega_vertex, {Role::omega, "", std::nullopt});
    for (auto u : gg.vertices_with(Role::u)) gg.graph.add_edge(omega_vertex, gg.graph.name(u));
    return gg;
}

namespace detail {

// Throws unless the caterpillar realizing cat_order satisfies every quartet.
inline void require_caterpillar_satisfies(const UqcInstance& inst, const TotalOrder& cat_order) {
    if (cat_order.size() != inst.points().size())
        throw validation_error("order must list every point exactly once");
    const auto pos = cat_order.positions();
    for (const auto& p : inst.points())
        if (!pos.contains(p)) throw validation_error("order is missing point '" + p + "'");
    for (const auto& q : inst.quartets())
        if (!order_separates(pos, q))
            throw validation_error("the caterpillar of the given order violates quartet " + q.to_string());
}

// Indices of the quartets containing each point, ascending.
inline std::unordered_map<std::string, std::vector<std::size_t>> quartets_by_point(const UqcInstance& inst) {
    std::unordered_map<std::string, std::vector<std::size_t>> by;
    for (std::size_t qi = 0; qi < inst.quartets().size(); ++qi)
        for (const auto& p : inst.quartets()[qi].points()) by[p].push_back(qi);
    return by;
}

}  // namespace detail

/// Order on V(G) for the sim gadget whose caterpillar has Omim-width 1.
/// Points keep cat_order; each u:i:q sits next to its point, on the side of
/// the other pair of q. Same-side u vertices are ordered by quartet index.
inline TotalOrder witness_order_sim(const UqcInstance& inst, const TotalOrder& cat_order) {
    detail::require_caterpillar_satisfies(inst, cat_order);
    const auto pos = cat_order.positions();
    const auto by = detail::quartets_by_point(inst);
    std::vector<std::string> seq;
    for (const auto& p : cat_order.sequence()) {
        std::vector<std::string> before, after;
        if (auto it = by.find(p); it != by.end()) {
            for (auto qi : it->second) {
                const auto& q = inst.quartets()[qi];
                const bool in_first = q.pair1[0] == p || q.pair1[1] == p;
                const auto& own = in_first ? q.pair1 : q.pair2;
                const auto& other = in_first ? q.pair2 : q.pair1;
                const bool own_first = std::max(pos.at(own[0]), pos.at(own[1])) < std::min(pos.at(other[0]), pos.at(other[1]));
                (own_first ? after : before).push_back(u_vertex(p, qi));
            }
        }
        seq.insert(seq.end(), before.begin(), before.end());
        seq.push_back(point_vertex(p));
        seq.insert(seq.end(), after.begin(), after.end());
    }
    return TotalOrder(std::move(seq));
}

/// Order on V(G) for the mim gadget whose caterpillar has mim-width 2:
/// point blocks in cat_order, each block the point, then its u vertices,
/// then its gamma vertices, both by quartet index.
inline TotalOrder witness_order_mim(const UqcInstance& inst, const TotalOrder& cat_order) {
    detail::require_caterpillar_satisfies(inst, cat_order);
    const auto by = detail::quartets_by_point(inst);
    std::vector<std::string> seq;
    for (const auto& p : cat_order.sequence()) {
        seq.push_back(point_vertex(p));
        if (auto it = by.find(p); it != by.end()) {
            for (auto qi : it->second) seq.push_back(u_vertex(p, qi));
            for (auto qi : it->second) seq.push_back(gamma_vertex(p, qi));
        }
    }
    return TotalOrder(std::move(seq));
}

/// Decomposition of H with mim-width 2: the caterpillar of cat_order with
/// omega hung next to the first point, and every point leaf p replaced by a
/// node joining p with a caterpillar over the rest of p's block.
inline BranchDecomposition witness_tree_h(const UqcInstance& inst, const TotalOrder& cat_order) {
    detail::require_caterpillar_satisfies(inst, cat_order);
    const auto by = detail::quartets_by_point(inst);
    const BranchDecomposition base = caterpillar_from_order(cat_order);

    BranchDecomposition t;
    std::vector<NodeId> remap(base.node_count());
    // Internal spine nodes first; point leaves become block subtrees below.
    for (NodeId u = 0; u < base.node_count(); ++u)
        if (!base.is_leaf(u)) remap[u] = t.add_internal();

    // Returns the node standing in for point p's leaf.
    auto expand = [&](const std::string& p) -> NodeId {
        std::vector<std::string> rest;
        if (auto it = by.find(p); it != by.end()) {
            for (auto qi : it->second) rest.push_back(u_vertex(p, qi));
            for (auto qi : it->second) rest.push_back(gamma_vertex(p, qi));
        }
        const NodeId leaf = t.add_leaf(point_vertex(p));
        if (rest.empty()) return leaf;
        const NodeId root = t.add_internal();
        t.add_edge(root, leaf);
        // rooted caterpillar over rest: chain of internal nodes, each with one
        // leaf, the last holding two leaves
        NodeId attach = root;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const NodeId l = t.add_leaf(rest[k]);
            if (k + 1 == rest.size()) {
                t.add_edge(attach, l);
            } else {
                const NodeId inner = t.add_internal();
                t.add_edge(attach, inner);
                t.add_edge(inner, l);
                attach = inner;
            }
        }
        return root;
    };
    for (NodeId u = 0; u < base.node_count(); ++u)
        if (base.is_leaf(u)) remap[u] = expand(base.label(u));
    for (auto [a, b] : base.edges()) t.add_edge(remap[a], remap[b]);

    // omega: subdivide the edge above the first point's subtree.
    if (base.node_count() == 0) {
        t.add_leaf(omega_vertex);
    } else if (base.node_count() == 1) {
        const NodeId w = t.add_leaf(omega_vertex);
        t.add_edge(remap[0], w);
    } else {
        const NodeId first = remap[*base.leaf_of(cat_order[0])];
        const NodeId above = t.neighbors(first).back();
        t.remove_edge(first, above);
        const NodeId mid = t.add_internal();
        const NodeId w = t.add_leaf(omega_vertex);
        t.add_edge(above, mid);
        t.add_edge(mid, first);
        t.add_edge(mid, w);
    }
    t.validate();
    return t;
}

}  // namespace widthforge

#endif
