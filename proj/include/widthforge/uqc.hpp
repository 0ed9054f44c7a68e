#ifndef WIDTHFORGE_UQC_HPP
#define WIDTHFORGE_UQC_HPP

#include <algorithm>
#include <array>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "widthforge/decomp.hpp"
#include "widthforge/widths.hpp"

namespace widthforge {

/// Quartet [ab|cd]: some tree edge must separate {a, b} from {c, d}.
struct Quartet {
    std::array<std::string, 2> pair1;
    std::array<std::string, 2> pair2;

    Quartet() = default;
    Quartet(std::string a, std::string b, std::string c, std::string d)
        : pair1{std::move(a), std::move(b)}, pair2{std::move(c), std::move(d)} {
        const std::set<std::string> pts{pair1[0], pair1[1], pair2[0], pair2[1]};
        if (pts.size() != 4) throw validation_error("quartet " + to_string() + " must name four distinct points");
    }

    /// The four points in the order a, b, c, d.
    [[nodiscard]] std::array<std::string, 4> points() const { return {pair1[0], pair1[1], pair2[0], pair2[1]}; }

    /// Pairs sorted internally, then the pairs sorted.
    [[nodiscard]] Quartet canonical() const {
        auto p = pair1;
        auto q = pair2;
        std::sort(p.begin(), p.end());
        std::sort(q.begin(), q.end());
        if (q < p) std::swap(p, q);
        Quartet out;
        out.pair1 = p;
        out.pair2 = q;
        return out;
    }

    [[nodiscard]] std::string to_string() const {
        return "[" + pair1[0] + " " + pair1[1] + " | " + pair2[0] + " " + pair2[1] + "]";
    }

    friend bool operator==(const Quartet&, const Quartet&) = default;
};

/// Point set P and quartet list Q; quartets are canonical and distinct.
class UqcInstance {
public:
    UqcInstance() = default;

    /// Validates the instance. Duplicate quartets (up to canonical form) are
    /// dropped; their count is available from duplicates_dropped().
    UqcInstance(std::vector<std::string> points, const std::vector<Quartet>& quartets) : points_(std::move(points)) {
        TotalOrder distinct(points_);
        std::unordered_set<std::string> known(points_.begin(), points_.end());
        if (!quartets.empty() && points_.size() < 4)
            throw validation_error("an instance with quartets needs at least four points");
        std::set<std::pair<std::array<std::string, 2>, std::array<std::string, 2>>> seen;
        for (const auto& q : quartets) {
            for (const auto& p : q.points())
                if (!known.contains(p)) throw validation_error("quartet " + q.to_string() + " names unknown point '" + p + "'");
            const auto c = q.canonical();
            if (!seen.emplace(c.pair1, c.pair2).second) {
                ++dropped_;
                continue;
            }
            quartets_.push_back(c);
        }
    }

    [[nodiscard]] const std::vector<std::string>& points() const noexcept { return points_; }
    [[nodiscard]] const std::vector<Quartet>& quartets() const noexcept { return quartets_; }
    [[nodiscard]] std::size_t duplicates_dropped() const noexcept { return dropped_; }

private:
    std::vector<std::string> points_;
    std::vector<Quartet> quartets_;
    std::size_t dropped_ = 0;
};

// Quartet file:
//   points: a b c d e
//   a b | c d
//   ...
// with '#' comments.
inline UqcInstance read_uqc(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty() || lines[0].rfind("points:", 0) != 0)
        throw validation_error("quartet file: first line must be 'points: <names>'");
    const auto points = detail::split_ws(lines[0].substr(7));
    std::vector<Quartet> qs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto tok = detail::split_ws(lines[i]);
        // accept "a b|c d" as well as "a b | c d"
        std::vector<std::string> flat;
        for (auto& t : tok) {
            std::string cur;
            for (char c : t) {
                if (c == '|') {
                    if (!cur.empty()) flat.push_back(cur);
                    flat.emplace_back("|");
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (!cur.empty()) flat.push_back(cur);
        }
        if (flat.size() != 5 || flat[2] != "|")
            throw validation_error("quartet file: expected 'a b | c d', got '" + lines[i] + "'");
        qs.emplace_back(flat[0], flat[1], flat[3], flat[4]);
    }
    return UqcInstance(points, qs);
}

inline UqcInstance parse_uqc(const std::string& text) {
    std::istringstream is(text);
    return read_uqc(is);
}

inline void write_uqc(std::ostream& out, const UqcInstance& inst) {
    out << "points:";
    for (const auto& p : inst.points()) out << ' ' << p;
    out << '\n';
    for (const auto& q : inst.quartets())
        out << q.pair1[0] << ' ' << q.pair1[1] << " | " << q.pair2[0] << ' ' << q.pair2[1] << '\n';
}

namespace detail {

// Nodes on the tree path between two nodes, as a membership vector.
inline std::vector<bool> tree_path(const BranchDecomposition& t, NodeId from, NodeId to) {
    const std::size_t n = t.node_count();
    std::vector<NodeId> parent(n, n);
    std::vector<NodeId> stack{from};
    parent[from] = from;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        if (u == to) break;
        for (NodeId v : t.neighbors(u))
            if (parent[v] == n) {
                parent[v] = u;
                stack.push_back(v);
            }
    }
    std::vector<bool> on(n, false);
    for (NodeId u = to;; u = parent[u]) {
        on[u] = true;
        if (u == from) break;
    }
    return on;
}

inline NodeId leaf_or_throw(const BranchDecomposition& t, const std::string& p) {
    if (auto u = t.leaf_of(p)) return *u;
    throw validation_error("point '" + p + "' is not a leaf of the tree");
}

}  // namespace detail

/// True iff the tree path between pair1 and the tree path between pair2 are
/// vertex-disjoint, i.e. some edge separates the two pairs.
inline bool satisfies_quartet(const BranchDecomposition& t, const Quartet& q) {
    const NodeId a = detail::leaf_or_throw(t, q.pair1[0]);
    const NodeId b = detail::leaf_or_throw(t, q.pair1[1]);
    const NodeId c = detail::leaf_or_throw(t, q.pair2[0]);
    const NodeId d = detail::leaf_or_throw(t, q.pair2[1]);
    const auto p1 = detail::tree_path(t, a, b);
    const auto p2 = detail::tree_path(t, c, d);
    for (std::size_t u = 0; u < p1.size(); ++u)
        if (p1[u] && p2[u]) return false;
    return true;
}

struct SatisfactionResult {
    bool satisfied = true;
    std::optional<std::size_t> violated;  ///< index of the first violated quartet
};

inline SatisfactionResult satisfies_all(const BranchDecomposition& t, const UqcInstance& inst) {
    for (std::size_t i = 0; i < inst.quartets().size(); ++i)
        if (!satisfies_quartet(t, inst.quartets()[i])) return {false, i};
    return {};
}

/// True iff the caterpillar realizing `order` satisfies q: one pair lies
/// entirely before the other.
inline bool order_separates(const std::unordered_map<std::string, std::size_t>& pos, const Quartet& q) {
    const auto a = pos.at(q.pair1[0]), b = pos.at(q.pair1[1]);
    const auto c = pos.at(q.pair2[0]), d = pos.at(q.pair2[1]);
    return std::max(a, b) < std::min(c, d) || std::max(c, d) < std::min(a, b);
}

enum class UqcMode { any_tree, caterpillar_only };

enum class UqcStatus { satisfiable, unsatisfiable, inconclusive };

inline std::string to_string(UqcStatus s) {
    switch (s) {
        case UqcStatus::satisfiable: return "satisfiable";
        case UqcStatus::unsatisfiable: return "unsatisfiable";
        case UqcStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct UqcResult {
    UqcStatus status = UqcStatus::inconclusive;
    std::optional<BranchDecomposition> tree;
    std::optional<TotalOrder> order;  ///< set in caterpillar mode
    SearchStats stats;
};

namespace detail {

// Quartets grouped by the point, in search order, that completes them.
inline std::vector<std::vector<std::size_t>> quartets_completed_at(const UqcInstance& inst) {
    std::unordered_map<std::string, std::size_t> rank;
    for (std::size_t i = 0; i < inst.points().size(); ++i) rank.emplace(inst.points()[i], i);
    std::vector<std::vector<std::size_t>> at(inst.points().size());
    for (std::size_t qi = 0; qi < inst.quartets().size(); ++qi) {
        std::size_t last = 0;
        for (const auto& p : inst.quartets()[qi].points()) last = std::max(last, rank.at(p));
        at[last].push_back(qi);
    }
    return at;
}

class TreeUqcSearch {
public:
    TreeUqcSearch(const UqcInstance& inst, SearchControl& ctl)
        : inst_(inst), ctl_(ctl), at_(quartets_completed_at(inst)) {}

    std::optional<BranchDecomposition> run() {
        const auto& pts = inst_.points();
        const std::size_t first = std::min<std::size_t>(3, pts.size());
        PartialTree tree(std::vector<std::string>(pts.begin(), pts.begin() + static_cast<long>(first)));
        for (std::size_t k = 0; k < first; ++k)
            if (!completed_ok(tree.tree(), k)) return std::nullopt;
        if (insert_from(tree, first)) return tree.tree();
        return std::nullopt;
    }

private:
    bool completed_ok(const BranchDecomposition& t, std::size_t k) const {
        for (auto qi : at_[k])
            if (!satisfies_quartet(t, inst_.quartets()[qi])) return false;
        return true;
    }

    bool insert_from(PartialTree& tree, std::size_t k) {
        if (k == inst_.points().size()) return true;
        const std::size_t edges = tree.edge_count();
        for (std::size_t e = 0; e < edges; ++e) {
            if (!ctl_.tick()) return false;
            tree.insert(e, inst_.points()[k]);
            if (completed_ok(tree.tree(), k)) {
                if (insert_from(tree, k + 1)) return true;
            } else {
                ctl_.prune();
            }
            tree.undo();
            if (ctl_.aborted()) return false;
        }
        return false;
    }

    const UqcInstance& inst_;
    SearchControl& ctl_;
    std::vector<std::vector<std::size_t>> at_;
};

class CaterpillarUqcSearch {
public:
    CaterpillarUqcSearch(const UqcInstance& inst, SearchControl& ctl)
        : inst_(inst), ctl_(ctl), used_(inst.points().size(), false) {
        for (std::size_t qi = 0; qi < inst.quartets().size(); ++qi)
            for (const auto& p : inst.quartets()[qi].points()) touching_[p].push_back(qi);
    }

    std::optional<TotalOrder> run() {
        if (place(0)) return TotalOrder(seq_);
        return std::nullopt;
    }

private:
    bool place(std::size_t depth) {
        const auto& pts = inst_.points();
        if (depth == pts.size()) return true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (used_[i]) continue;
            if (!ctl_.tick()) return false;
            used_[i] = true;
            seq_.push_back(pts[i]);
            pos_[pts[i]] = depth;
            if (consistent(pts[i])) {
                if (place(depth + 1)) return true;
            } else {
                ctl_.prune();
            }
            pos_.erase(pts[i]);
            seq_.pop_back();
            used_[i] = false;
            if (ctl_.aborted()) return false;
        }
        return false;
    }

    // Checks quartets that just became fully placed.
    bool consistent(const std::string& p) const {
        auto it = touching_.find(p);
        if (it == touching_.end()) return true;
        for (auto qi : it->second) {
            const auto& q = inst_.quartets()[qi];
            bool placed = true;
            for (const auto& x : q.points()) placed = placed && pos_.contains(x);
            if (placed && !order_separates(pos_, q)) return false;
        }
        return true;
    }

    const UqcInstance& inst_;
    SearchControl& ctl_;
    std::vector<bool> used_;
    std::vector<std::string> seq_;
    std::unordered_map<std::string, std::size_t> pos_;
    std::unordered_map<std::string, std::vector<std::size_t>> touching_;
};

}  // namespace detail

/// Brute-force quartet consistency with pruning on fully placed quartets.
/// "unsatisfiable" is only reported after the whole space was searched.
inline UqcResult solve_uqc(const UqcInstance& inst, UqcMode mode, const Budget& budget = {}) {
    detail::SearchControl ctl(budget);
    UqcResult r;
    if (inst.points().empty()) {
        r.status = UqcStatus::satisfiable;
        r.tree = BranchDecomposition{};
        if (mode == UqcMode::caterpillar_only) r.order = TotalOrder{};
        r.stats = ctl.stats();
        return r;
    }
    if (mode == UqcMode::caterpillar_only) {
        if (auto order = detail::CaterpillarUqcSearch(inst, ctl).run()) {
            r.status = UqcStatus::satisfiable;
            r.tree = caterpillar_from_order(*order);
            r.order = std::move(order);
        } else {
            r.status = ctl.aborted() ? UqcStatus::inconclusive : UqcStatus::unsatisfiable;
        }
    } else {
        if (auto t = detail::TreeUqcSearch(inst, ctl).run()) {
            r.status = UqcStatus::satisfiable;
            r.tree = std::move(t);
        } else {
            r.status = ctl.aborted() ? UqcStatus::inconclusive : UqcStatus::unsatisfiable;
        }
    }
    r.stats = ctl.stats();
    if (r.status != UqcStatus::inconclusive) r.stats.budget_exhausted = false;
    return r;
}

}  // namespace widthforge

#endif
