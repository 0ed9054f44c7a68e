#ifndef WIDTHFORGE_NEWICK_HPP
#define WIDTHFORGE_NEWICK_HPP

#include <algorithm>
#include <cctype>
#include <istream>
#include <iterator>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "widthforge/decomp.hpp"

namespace widthforge {

// Newick-style text for unrooted ternary trees with unlabelled internal
// nodes: "(a,b,(c,d));" is the 4-leaf caterpillar. A root with two children
// is contracted into a single edge, so "((a,b),(c,d));" parses to the same
// tree.

namespace detail {

class NewickParser {
public:
    explicit NewickParser(const std::string& text) : s_(text) {}

    BranchDecomposition parse() {
        skip_ws();
        if (pos_ >= s_.size()) throw error("empty tree");
        if (peek() != '(') {
            t_.add_leaf(read_label());
            finish();
            return t_;
        }
        const NodeId root = t_.add_internal();
        const auto children = read_children(root);
        finish();
        if (children.size() == 1) throw error("root has a single child");
        if (children.size() > 3) throw error("root has more than three children");
        if (children.size() == 2) contract_root(root, children);
        t_.validate();
        return std::move(t_);
    }

private:
    validation_error error(const std::string& msg) const {
        return validation_error("newick: " + msg + " at offset " + std::to_string(pos_));
    }

    char peek() const { return s_[pos_]; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) throw error(std::string("expected '") + c + "'");
        ++pos_;
    }

    void finish() {
        expect(';');
        skip_ws();
        if (pos_ != s_.size()) throw error("trailing text after ';'");
    }

    std::string read_label() {
        skip_ws();
        if (pos_ < s_.size() && peek() == '\'') return read_quoted();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::string_view("(),;:'").find(s_[pos_]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start) throw error("expected a leaf label");
        return s_.substr(start, pos_ - start);
    }

    // 'label' with '' standing for a quote character
    std::string read_quoted() {
        ++pos_;
        std::string out;
        for (;;) {
            if (pos_ >= s_.size()) throw error("unterminated quoted label");
            const char c = s_[pos_++];
            if (c != '\'') {
                out += c;
            } else if (pos_ < s_.size() && s_[pos_] == '\'') {
                out += c;
                ++pos_;
            } else {
                break;
            }
        }
        if (out.empty()) throw error("empty quoted label");
        return out;
    }

    // Parses "(x,y,...)" after `self` was created; returns the child ids.
    std::vector<NodeId> read_children(NodeId self) {
        expect('(');
        std::vector<NodeId> kids;
        for (;;) {
            skip_ws();
            if (pos_ >= s_.size()) throw error("unterminated '('");
            NodeId child;
            if (peek() == '(') {
                child = t_.add_internal();
                const auto grand = read_children(child);
                if (grand.size() != 2) throw error("internal node must have exactly two children");
            } else {
                child = t_.add_leaf(read_label());
            }
            t_.add_edge(self, child);
            kids.push_back(child);
            skip_ws();
            if (pos_ < s_.size() && peek() == ',') {
                ++pos_;
                continue;
            }
            expect(')');
            skip_ws();
            if (pos_ < s_.size() && peek() != ',' && peek() != ')' && peek() != ';')
                throw error("internal nodes must be unlabelled");
            return kids;
        }
    }

    // Replaces root-with-two-children by a direct edge. The root has the
    // smallest id among internal nodes, so it is rebuilt without it.
    void contract_root(NodeId root, const std::vector<NodeId>& kids) {
        BranchDecomposition out;
        std::vector<NodeId> remap(t_.node_count());
        for (NodeId u = 0; u < t_.node_count(); ++u) {
            if (u == root) continue;
            remap[u] = t_.is_leaf(u) ? out.add_leaf(t_.label(u)) : out.add_internal();
        }
        for (auto [u, v] : t_.edges())
            if (u != root && v != root) out.add_edge(remap[u], remap[v]);
        out.add_edge(remap[kids[0]], remap[kids[1]]);
        t_ = std::move(out);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    BranchDecomposition t_;
};

// Labels with Newick punctuation or blanks are written in single quotes.
inline std::string newick_label(const std::string& label) {
    const bool plain = std::none_of(label.begin(), label.end(), [](char c) {
        return std::string_view("(),;:'[]").find(c) != std::string_view::npos || std::isspace(static_cast<unsigned char>(c));
    });
    if (plain) return label;
    std::string out = "'";
    for (char c : label) {
        if (c == '\'') out += '\'';
        out += c;
    }
    return out + "'";
}

// Subtree text paired with its smallest leaf label; siblings are ordered by
// that label.
using NewickPart = std::pair<std::string, std::string>;

inline NewickPart newick_below(const BranchDecomposition& t, NodeId u, NodeId parent) {
    if (t.is_leaf(u)) return {t.label(u), newick_label(t.label(u))};
    std::vector<NewickPart> parts;
    for (NodeId v : t.neighbors(u))
        if (v != parent) parts.push_back(newick_below(t, v, u));
    std::sort(parts.begin(), parts.end());
    return {parts[0].first, "(" + parts[0].second + "," + parts[1].second + ")"};
}

}  // namespace detail

inline BranchDecomposition parse_newick(const std::string& text) { return detail::NewickParser(text).parse(); }

inline BranchDecomposition read_newick(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::string stripped;
    // '#' comments outside quoted labels, as in the other text formats
    bool quoted = false;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '#' && !quoted) {
            while (i < text.size() && text[i] != '\n') ++i;
        } else {
            if (text[i] == '\'') quoted = !quoted;
            stripped += text[i++];
        }
    }
    return parse_newick(stripped);
}

/// Deterministic Newick string: rooted at the internal neighbour of the
/// smallest leaf, children ordered by their smallest leaf.
inline std::string to_newick(const BranchDecomposition& t) {
    const auto first = detail::smallest_leaf(t);
    if (!first) return ";";
    if (t.neighbors(*first).empty()) return detail::newick_label(t.label(*first)) + ";";
    const NodeId hub = t.neighbors(*first).front();
    if (t.is_leaf(hub)) {
        const auto lo = std::min(t.label(*first), t.label(hub));
        const auto hi = std::max(t.label(*first), t.label(hub));
        return "(" + detail::newick_label(lo) + "," + detail::newick_label(hi) + ");";
    }
    std::vector<detail::NewickPart> parts;
    for (NodeId v : t.neighbors(hub)) parts.push_back(detail::newick_below(t, v, hub));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) s += ',';
        s += parts[k].second;
    }
    return s + ");";
}

}  // namespace widthforge

#endif
