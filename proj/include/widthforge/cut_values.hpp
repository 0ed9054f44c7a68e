#ifndef WIDTHFORGE_CUT_VALUES_HPP
#define WIDTHFORGE_CUT_VALUES_HPP

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "widthforge/graph.hpp"

namespace widthforge {

/// Bipartition (side_a, side_b) of the vertex set of a graph. Either side may
/// be empty.
class Cut {
public:
    Cut() = default;

    /// Cut with side_a = a and side_b = V(g) \ a.
    static Cut of(const Graph& g, VertexSet a) {
        if (a & ~g.all()) throw validation_error("cut side names a vertex outside the graph");
        return Cut(a, g.all() & ~a);
    }

    static Cut from_names(const Graph& g, const std::vector<std::string>& a, const std::vector<std::string>& b) {
        const VertexSet ma = g.mask_of(a);
        const VertexSet mb = g.mask_of(b);
        if (ma & mb) throw validation_error("cut sides overlap");
        if ((ma | mb) != g.all()) throw validation_error("cut sides do not cover every vertex");
        return Cut(ma, mb);
    }

    [[nodiscard]] VertexSet side_a() const noexcept { return a_; }
    [[nodiscard]] VertexSet side_b() const noexcept { return b_; }
    [[nodiscard]] Cut swapped() const noexcept { return Cut(b_, a_); }

    /// Throws unless this is a bipartition of V(g).
    void validate(const Graph& g) const {
        if (a_ & b_) throw validation_error("cut sides overlap");
        if ((a_ | b_) != g.all()) throw validation_error("cut is not a bipartition of the graph's vertices");
    }

    friend bool operator==(const Cut&, const Cut&) = default;

private:
    Cut(VertexSet a, VertexSet b) : a_(a), b_(b) {}
    VertexSet a_ = 0;
    VertexSet b_ = 0;
};

enum class CutKind { mim, sim, omim, Omim };

inline constexpr CutKind all_cut_kinds[] = {CutKind::mim, CutKind::sim, CutKind::omim, CutKind::Omim};

inline std::string to_string(CutKind k) {
    switch (k) {
        case CutKind::mim: return "mim";
        case CutKind::sim: return "sim";
        case CutKind::omim: return "omim";
        case CutKind::Omim: return "Omim";
    }
    return "?";
}

inline CutKind parse_cut_kind(const std::string& s) {
    for (auto k : all_cut_kinds)
        if (to_string(k) == s) return k;
    throw validation_error("unknown width parameter '" + s + "' (expected mim, sim, omim or Omim)");
}

namespace detail {

// Maximum matching between a and b whose edges pairwise conflict-free, where a
// pair of matched edges a1b1, a2b2 conflicts if a1b2 or a2b1 is an edge, or
// a1a2 is an edge and keep_a, or b1b2 is an edge and keep_b. Vertices outside
// a | b are ignored, so this also evaluates the cut (a, b) of G[a | b].
// Search stops as soon as `cap` is reached.
class CrossMatchingSearch {
public:
    CrossMatchingSearch(const Graph& g, bool keep_a, bool keep_b, int cap)
        : g_(g), keep_a_(keep_a), keep_b_(keep_b), cap_(cap) {}

    int run(VertexSet a, VertexSet b) {
        best_ = 0;
        extend(a, b, 0);
        return best_;
    }

private:
    void extend(VertexSet allow_a, VertexSet allow_b, int size) {
        if (size > best_) best_ = size;
        if (best_ >= cap_) return;

        VertexSet live_a = 0, reach_b = 0;
        std::size_t pivot = 0;
        int pivot_deg = INT_MAX;
        for_each_vertex(allow_a, [&](std::size_t v) {
            const VertexSet nb = g_.neighbors(v) & allow_b;
            if (nb == 0) return;
            live_a |= bit(v);
            reach_b |= nb;
            const int d = popcount(nb);
            if (d < pivot_deg) {
                pivot_deg = d;
                pivot = v;
            }
        });
        if (live_a == 0) return;
        if (size + std::min(popcount(live_a), popcount(reach_b)) <= best_) return;

        const VertexSet na = g_.neighbors(pivot);
        for_each_vertex(na & allow_b, [&](std::size_t w) {
            if (best_ >= cap_) return;
            const VertexSet nw = g_.neighbors(w);
            VertexSet next_a = live_a & ~bit(pivot) & ~nw;
            if (keep_a_) next_a &= ~na;
            VertexSet next_b = reach_b & ~bit(w) & ~na;
            if (keep_b_) next_b &= ~nw;
            extend(next_a, next_b, size + 1);
        });
        if (best_ < cap_) extend(live_a & ~bit(pivot), reach_b, size);
    }

    const Graph& g_;
    bool keep_a_;
    bool keep_b_;
    int cap_;
    int best_ = 0;
};

inline int cross_matching(const Graph& g, VertexSet a, VertexSet b, bool keep_a, bool keep_b, int cap) {
    return CrossMatchingSearch(g, keep_a, keep_b, cap).run(a, b);
}

}  // namespace detail

/// Value of the cut (a, b) of G[a | b] for the given kind; a and b must be
/// disjoint. Values at or above `cap` are reported as `cap`.
inline int cut_value(const Graph& g, VertexSet a, VertexSet b, CutKind kind, int cap = INT_MAX) {
    switch (kind) {
        case CutKind::mim: return detail::cross_matching(g, a, b, false, false, cap);
        case CutKind::sim: return detail::cross_matching(g, a, b, true, true, cap);
        case CutKind::omim: {
            const int ua = detail::cross_matching(g, a, b, true, false, cap);
            if (ua == 0) return 0;
            return std::min(ua, detail::cross_matching(g, b, a, true, false, ua));
        }
        case CutKind::Omim: {
            const int ua = detail::cross_matching(g, a, b, true, false, cap);
            if (ua >= cap) return ua;
            return std::max(ua, detail::cross_matching(g, b, a, true, false, cap));
        }
    }
    return 0;
}

inline int cut_value(const Graph& g, const Cut& c, CutKind kind) {
    c.validate(g);
    return cut_value(g, c.side_a(), c.side_b(), kind);
}

/// Maximum size of an induced matching of G[A,B].
inline int mim_value(const Graph& g, const Cut& c) { return cut_value(g, c, CutKind::mim); }

/// Maximum matching of G[A,B] that is an induced matching of G.
inline int sim_value(const Graph& g, const Cut& c) { return cut_value(g, c, CutKind::sim); }

/// Maximum matching of G[X, V \ X] that is induced in G minus the edges
/// inside V \ X.
inline int upper_induced_matching_number(const Graph& g, VertexSet x) {
    if (x & ~g.all()) throw validation_error("vertex subset is not contained in the graph");
    return detail::cross_matching(g, x, g.all() & ~x, true, false, INT_MAX);
}

inline int upper_induced_matching_number(const Graph& g, const std::vector<std::string>& x) {
    return upper_induced_matching_number(g, g.mask_of(x));
}

inline int omim_value(const Graph& g, const Cut& c) { return cut_value(g, c, CutKind::omim); }

inline int Omim_value(const Graph& g, const Cut& c) { return cut_value(g, c, CutKind::Omim); }

namespace detail {

class InducedMatchingSearch {
public:
    explicit InducedMatchingSearch(const Graph& g) : g_(g) {}

    int run() {
        best_ = 0;
        extend(g_.all(), 0);
        return best_;
    }

private:
    void extend(VertexSet allowed, int size) {
        if (size > best_) best_ = size;
        VertexSet live = 0;
        std::size_t pivot = 0;
        int pivot_deg = INT_MAX;
        for_each_vertex(allowed, [&](std::size_t v) {
            const int d = popcount(g_.neighbors(v) & allowed);
            if (d == 0) return;
            live |= bit(v);
            if (d < pivot_deg) {
                pivot_deg = d;
                pivot = v;
            }
        });
        if (size + popcount(live) / 2 <= best_) return;
        const VertexSet closed_pivot = g_.neighbors(pivot) | bit(pivot);
        for_each_vertex(g_.neighbors(pivot) & live, [&](std::size_t w) {
            extend(live & ~closed_pivot & ~(g_.neighbors(w) | bit(w)), size + 1);
        });
        extend(live & ~bit(pivot), size);
    }

    const Graph& g_;
    int best_ = 0;
};

}  // namespace detail

/// Maximum size of an induced matching of the whole graph.
inline int max_induced_matching(const Graph& g) { return detail::InducedMatchingSearch(g).run(); }

/// An induced (chordless) cycle of length >= k, as a vertex sequence, or
/// nullopt if none exists. k must be at least 4.
inline std::optional<std::vector<std::size_t>> find_induced_cycle_geq(const Graph& g, int k) {
    if (k < 4) throw validation_error("induced cycle length bound must be at least 4");
    if (static_cast<std::size_t>(k) > g.size()) return std::nullopt;

    std::vector<std::size_t> path;
    std::optional<std::vector<std::size_t>> found;

    // path[0] is the smallest vertex of the cycle; `inner` holds path[1..t-1].
    auto grow = [&](auto&& self, VertexSet on_path, VertexSet inner) -> void {
        if (found) return;
        const std::size_t start = path.front();
        const std::size_t tip = path.back();
        const VertexSet higher = g.all() & ~(bit(start + 1) - 1);
        for_each_vertex(g.neighbors(tip) & higher & ~on_path, [&](std::size_t w) {
            if (found) return;
            const VertexSet nw = g.neighbors(w);
            if (nw & inner) return;
            if (path.size() >= 2 && (nw & bit(start))) {
                if (static_cast<int>(path.size()) + 1 >= k && path.size() >= 3) {
                    found = path;
                    found->push_back(w);
                }
                return;
            }
            const VertexSet next_inner = path.size() >= 2 ? inner | bit(tip) : inner;
            path.push_back(w);
            self(self, on_path | bit(w), next_inner);
            path.pop_back();
        });
    };

    for (std::size_t s = 0; s < g.size() && !found; ++s) {
        path.assign(1, s);
        grow(grow, bit(s), 0);
    }
    return found;
}

inline bool has_induced_cycle_geq(const Graph& g, int k) { return find_induced_cycle_geq(g, k).has_value(); }

}  // namespace widthforge

#endif
