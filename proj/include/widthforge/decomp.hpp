#ifndef WIDTHFORGE_DECOMP_HPP
#define WIDTHFORGE_DECOMP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "widthforge/cut_values.hpp"
#include "widthforge/graph.hpp"

namespace widthforge {

using NodeId = std::size_t;

/// Unrooted tree whose leaves carry vertex labels. Internal nodes have degree
/// 3 except in the degenerate trees on one or two leaves.
class BranchDecomposition {
public:
    NodeId add_leaf(std::string label) {
        if (label.empty()) throw validation_error("leaf label must not be empty");
        if (leaf_index_.contains(label)) throw validation_error("duplicate leaf label '" + label + "'");
        const NodeId id = adj_.size();
        adj_.emplace_back();
        leaf_index_.emplace(label, id);
        labels_.push_back(std::move(label));
        return id;
    }

    NodeId add_internal() {
        adj_.emplace_back();
        labels_.emplace_back();
        return adj_.size() - 1;
    }

    void add_edge(NodeId u, NodeId v) {
        check(u);
        check(v);
        if (u == v) throw validation_error("tree self-loop");
        if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end())
            throw validation_error("tree edge already exists");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    void remove_edge(NodeId u, NodeId v) {
        auto drop = [](std::vector<NodeId>& list, NodeId x) {
            auto it = std::find(list.begin(), list.end(), x);
            if (it == list.end()) throw validation_error("tree edge does not exist");
            list.erase(it);
        };
        drop(adj_[u], v);
        drop(adj_[v], u);
    }

    /// Drops the highest-numbered node, which must be isolated.
    void remove_last_node() {
        if (adj_.empty() || !adj_.back().empty()) throw validation_error("only an isolated last node can be removed");
        if (!labels_.back().empty()) leaf_index_.erase(labels_.back());
        adj_.pop_back();
        labels_.pop_back();
    }

    [[nodiscard]] std::size_t node_count() const noexcept { return adj_.size(); }
    [[nodiscard]] std::size_t leaf_count() const noexcept { return leaf_index_.size(); }
    [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId u) const { return adj_.at(u); }
    [[nodiscard]] bool is_leaf(NodeId u) const { return !labels_.at(u).empty(); }
    [[nodiscard]] const std::string& label(NodeId u) const { return labels_.at(u); }

    [[nodiscard]] std::optional<NodeId> leaf_of(const std::string& label) const {
        auto it = leaf_index_.find(label);
        if (it == leaf_index_.end()) return std::nullopt;
        return it->second;
    }

    /// Leaf labels in node order.
    [[nodiscard]] std::vector<std::string> leaf_labels() const {
        std::vector<std::string> out;
        for (const auto& l : labels_)
            if (!l.empty()) out.push_back(l);
        return out;
    }

    /// Tree edges (u, v) with u < v, in node order.
    [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (NodeId u = 0; u < adj_.size(); ++u)
            for (NodeId v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    /// Throws unless this is a tree, leaves are exactly the labelled nodes and
    /// carry degree 1, and internal nodes have degree 3.
    void validate() const {
        const std::size_t n = adj_.size();
        if (n == 0) return;
        std::size_t edge_ends = 0;
        for (NodeId u = 0; u < n; ++u) {
            const std::size_t d = adj_[u].size();
            edge_ends += d;
            if (is_leaf(u)) {
                if (d > 1 || (d == 0 && n > 1))
                    throw validation_error("leaf '" + labels_[u] + "' must have exactly one neighbour");
            } else if (d != 3) {
                throw validation_error("internal tree node must have degree 3, found degree " + std::to_string(d));
            }
        }
        if (edge_ends / 2 != n - 1) throw validation_error("decomposition is not a tree (edge count)");
        std::vector<bool> seen(n, false);
        std::vector<NodeId> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : adj_[u])
                if (!seen[v]) {
                    seen[v] = true;
                    ++reached;
                    stack.push_back(v);
                }
        }
        if (reached != n) throw validation_error("decomposition is not connected");
    }

private:
    void check(NodeId u) const {
        if (u >= adj_.size()) throw validation_error("tree node id out of range");
    }

    std::vector<std::vector<NodeId>> adj_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> leaf_index_;
};

/// A permutation of distinct element names.
class TotalOrder {
public:
    TotalOrder() = default;
    explicit TotalOrder(std::vector<std::string> seq) : seq_(std::move(seq)) {
        std::unordered_set<std::string> seen;
        for (const auto& s : seq_) {
            if (s.empty()) throw validation_error("order element must not be empty");
            if (!seen.insert(s).second) throw validation_error("order repeats element '" + s + "'");
        }
    }

    [[nodiscard]] const std::vector<std::string>& sequence() const noexcept { return seq_; }
    [[nodiscard]] std::size_t size() const noexcept { return seq_.size(); }
    [[nodiscard]] const std::string& operator[](std::size_t i) const { return seq_[i]; }

    [[nodiscard]] TotalOrder reversed() const {
        return TotalOrder(std::vector<std::string>(seq_.rbegin(), seq_.rend()));
    }

    /// Position of every element.
    [[nodiscard]] std::unordered_map<std::string, std::size_t> positions() const {
        std::unordered_map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < seq_.size(); ++i) pos.emplace(seq_[i], i);
        return pos;
    }

    friend bool operator==(const TotalOrder&, const TotalOrder&) = default;

private:
    std::vector<std::string> seq_;
};

/// Ternary caterpillar realizing the order: spine nodes 2..n-1, leaf i on
/// spine node i, first leaf also on node 2, last leaf on node n-1. One or two
/// elements give the single-node / single-edge tree, three give the star.
inline BranchDecomposition caterpillar_from_order(const TotalOrder& order) {
    BranchDecomposition t;
    const std::size_t n = order.size();
    std::vector<NodeId> leaf(n);
    for (std::size_t i = 0; i < n; ++i) leaf[i] = t.add_leaf(order[i]);
    if (n <= 1) return t;
    if (n == 2) {
        t.add_edge(leaf[0], leaf[1]);
        return t;
    }
    // spine[k] is the node for position k + 1 (1-based positions 2..n-1)
    std::vector<NodeId> spine;
    for (std::size_t i = 1; i + 1 < n; ++i) spine.push_back(t.add_internal());
    for (std::size_t k = 0; k + 1 < spine.size(); ++k) t.add_edge(spine[k], spine[k + 1]);
    t.add_edge(leaf[0], spine.front());
    for (std::size_t i = 1; i + 1 < n; ++i) t.add_edge(leaf[i], spine[i - 1]);
    t.add_edge(leaf[n - 1], spine.back());
    return t;
}

/// True iff the internal nodes induce a path (trivially true for trees with at
/// most one internal node).
inline bool is_caterpillar(const BranchDecomposition& t) {
    for (NodeId u = 0; u < t.node_count(); ++u) {
        if (t.is_leaf(u)) continue;
        int internal_nb = 0;
        for (NodeId v : t.neighbors(u))
            if (!t.is_leaf(v)) ++internal_nb;
        if (internal_nb > 2) return false;
    }
    return true;
}

namespace detail {

inline std::string canonical_below(const BranchDecomposition& t, NodeId u, NodeId parent) {
    if (t.is_leaf(u)) return t.label(u);
    std::vector<std::string> parts;
    for (NodeId v : t.neighbors(u))
        if (v != parent) parts.push_back(canonical_below(t, v, u));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += parts[i];
    }
    return s + ")";
}

inline std::optional<NodeId> smallest_leaf(const BranchDecomposition& t) {
    std::optional<NodeId> best;
    for (NodeId u = 0; u < t.node_count(); ++u)
        if (t.is_leaf(u) && (!best || t.label(u) < t.label(*best))) best = u;
    return best;
}

}  // namespace detail

/// String equal for two trees iff they are isomorphic as leaf-labelled trees.
/// Rooted at the edge incident to the smallest leaf, subtrees sorted by their
/// own canonical strings.
inline std::string canonical_form(const BranchDecomposition& t) {
    const auto root = detail::smallest_leaf(t);
    if (!root) return "";
    if (t.neighbors(*root).empty()) return t.label(*root);
    const NodeId other = t.neighbors(*root).front();
    return t.label(*root) + "|" + detail::canonical_below(t, other, *root);
}

/// True iff t is the caterpillar realizing `order`, up to relabelling of
/// internal nodes.
inline bool realizes(const BranchDecomposition& t, const TotalOrder& order) {
    if (t.leaf_count() != order.size()) return false;
    for (const auto& e : order.sequence())
        if (!t.leaf_of(e)) return false;
    return canonical_form(t) == canonical_form(caterpillar_from_order(order));
}

/// One tree edge together with the cut it induces: side_a holds the graph
/// vertices on the `second` endpoint's side.
struct TreeCut {
    NodeId first;
    NodeId second;
    Cut cut;
};

namespace detail {

// Leaf masks of every node's subtree when the tree is rooted at node 0, plus
// the parent of every node.
struct RootedMasks {
    std::vector<VertexSet> below;
    std::vector<NodeId> parent;
    std::vector<NodeId> preorder;
};

inline RootedMasks rooted_masks(const BranchDecomposition& t, const std::vector<VertexSet>& leaf_bit) {
    const std::size_t n = t.node_count();
    RootedMasks r{std::vector<VertexSet>(n, 0), std::vector<NodeId>(n, n), {}};
    if (n == 0) return r;
    std::vector<NodeId> stack{0};
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        r.preorder.push_back(u);
        for (NodeId v : t.neighbors(u))
            if (v != r.parent[u]) {
                r.parent[v] = u;
                stack.push_back(v);
            }
    }
    for (auto it = r.preorder.rbegin(); it != r.preorder.rend(); ++it) {
        const NodeId u = *it;
        r.below[u] |= leaf_bit[u];
        if (u != 0) r.below[r.parent[u]] |= r.below[u];
    }
    return r;
}

// Map each leaf node to the bit of its graph vertex; throws unless the leaf
// labels are exactly V(g).
inline std::vector<VertexSet> leaf_bits(const BranchDecomposition& t, const Graph& g) {
    if (t.leaf_count() != g.size())
        throw validation_error("decomposition has " + std::to_string(t.leaf_count()) + " leaves but the graph has " +
                               std::to_string(g.size()) + " vertices");
    std::vector<VertexSet> bits(t.node_count(), 0);
    for (NodeId u = 0; u < t.node_count(); ++u) {
        if (!t.is_leaf(u)) continue;
        const auto v = g.find(t.label(u));
        if (!v) throw validation_error("leaf '" + t.label(u) + "' is not a vertex of the graph");
        bits[u] = bit(*v);
    }
    return bits;
}

}  // namespace detail

/// Cut induced by every tree edge; 2n - 3 entries for n >= 2 leaves.
inline std::vector<TreeCut> cuts_of(const BranchDecomposition& t, const Graph& g) {
    const auto bits = detail::leaf_bits(t, g);
    const auto r = detail::rooted_masks(t, bits);
    std::vector<TreeCut> out;
    for (auto [u, v] : t.edges()) {
        // one endpoint is the parent of the other
        const NodeId child = r.parent[v] == u ? v : u;
        const NodeId par = child == v ? u : v;
        out.push_back(TreeCut{par, child, Cut::of(g, r.below[child])});
    }
    return out;
}

/// Incrementally built ternary tree: starts as the star on three leaves, each
/// further leaf subdivides an existing edge. Insertions can be undone in LIFO
/// order.
class PartialTree {
public:
    explicit PartialTree(const std::vector<std::string>& first_leaves) {
        if (first_leaves.empty()) throw validation_error("a tree needs at least one leaf");
        if (first_leaves.size() > 3) throw validation_error("partial trees start from at most three leaves");
        std::vector<NodeId> l;
        for (const auto& s : first_leaves) l.push_back(tree_.add_leaf(s));
        if (l.size() == 2) {
            tree_.add_edge(l[0], l[1]);
            edges_.emplace_back(l[0], l[1]);
        } else if (l.size() == 3) {
            const NodeId c = tree_.add_internal();
            for (NodeId x : l) {
                tree_.add_edge(c, x);
                edges_.emplace_back(c, x);
            }
        }
    }

    [[nodiscard]] const BranchDecomposition& tree() const noexcept { return tree_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<std::pair<NodeId, NodeId>>& edges() const noexcept { return edges_; }

    /// Attaches a new leaf to the middle of edge `e`.
    void insert(std::size_t e, const std::string& label) {
        if (edges_.size() < 2) throw validation_error("insertion needs a tree with at least two leaves");
        const auto [x, y] = edges_.at(e);
        tree_.remove_edge(x, y);
        const NodeId m = tree_.add_internal();
        const NodeId leaf = tree_.add_leaf(label);
        tree_.add_edge(x, m);
        tree_.add_edge(m, y);
        tree_.add_edge(m, leaf);
        edges_[e] = {x, m};
        edges_.emplace_back(m, y);
        edges_.emplace_back(m, leaf);
        history_.push_back(e);
    }

    void undo() {
        const std::size_t e = history_.back();
        history_.pop_back();
        const NodeId leaf = edges_.back().second;
        edges_.pop_back();
        const NodeId y = edges_.back().second;
        edges_.pop_back();
        const auto [x, m] = edges_[e];
        tree_.remove_edge(m, leaf);
        tree_.remove_edge(x, m);
        tree_.remove_edge(m, y);
        tree_.remove_last_node();
        tree_.remove_last_node();
        tree_.add_edge(x, y);
        edges_[e] = {x, y};
    }

private:
    BranchDecomposition tree_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::size_t> history_;
};

/// (2n - 5)!! for n >= 3 leaves; 1 for n <= 2.
inline std::uint64_t ternary_tree_count(std::size_t n) {
    std::uint64_t c = 1;
    for (std::size_t k = 3; n >= 4 && k <= 2 * n - 5; k += 2) c *= k;
    return c;
}

/// Yields every unrooted leaf-labelled ternary tree on the given leaves exactly
/// once, by decoding a mixed-radix counter of insertion positions: leaf k
/// (0-based, k >= 3) goes into one of the 2k - 3 edges present at that point.
/// One or two leaves yield the single degenerate tree.
class TernaryTreeEnumerator {
public:
    explicit TernaryTreeEnumerator(std::vector<std::string> leaves) : leaves_(std::move(leaves)) {
        if (leaves_.empty()) throw validation_error("tree enumeration needs at least one leaf");
        TotalOrder check(leaves_);
        reset();
    }

    void reset() {
        digits_.assign(leaves_.size() > 3 ? leaves_.size() - 3 : 0, 0);
        done_ = false;
    }

    std::optional<BranchDecomposition> next() {
        if (done_) return std::nullopt;
        BranchDecomposition t = build();
        advance();
        return t;
    }

private:
    BranchDecomposition build() const {
        const std::size_t first = std::min<std::size_t>(3, leaves_.size());
        PartialTree p(std::vector<std::string>(leaves_.begin(), leaves_.begin() + static_cast<long>(first)));
        for (std::size_t k = 3; k < leaves_.size(); ++k) p.insert(digits_[k - 3], leaves_[k]);
        return p.tree();
    }

    void advance() {
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            const std::size_t radix = 2 * (i + 3) - 3;
            if (++digits_[i] < radix) return;
            digits_[i] = 0;
        }
        done_ = true;
    }

    std::vector<std::string> leaves_;
    std::vector<std::size_t> digits_;
    bool done_ = false;
};

/// Yields the permutations of the given elements in lexicographic order of
/// positions. With `skip_reversals`, only orders whose first element precedes
/// their last element in the input are produced.
class OrderEnumerator {
public:
    OrderEnumerator(std::vector<std::string> elements, bool skip_reversals = false)
        : elements_(std::move(elements)), skip_reversals_(skip_reversals) {
        TotalOrder check(elements_);
        reset();
    }

    void reset() {
        perm_.resize(elements_.size());
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        done_ = false;
    }

    std::optional<TotalOrder> next() {
        while (!done_) {
            const bool keep = !skip_reversals_ || perm_.size() < 2 || perm_.front() < perm_.back();
            std::vector<std::string> seq;
            if (keep)
                for (auto i : perm_) seq.push_back(elements_[i]);
            done_ = !std::next_permutation(perm_.begin(), perm_.end());
            if (keep) return TotalOrder(std::move(seq));
        }
        return std::nullopt;
    }

private:
    std::vector<std::string> elements_;
    bool skip_reversals_;
    std::vector<std::size_t> perm_;
    bool done_ = false;
};

}  // namespace widthforge

#endif
