#ifndef WIDTHFORGE_GRAPH_HPP
#define WIDTHFORGE_GRAPH_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "widthforge/error.hpp"

namespace widthforge {

/// Vertex subsets are bit masks over vertex indices.
using VertexSet = std::uint64_t;

inline constexpr std::size_t max_vertices = 64;

constexpr VertexSet bit(std::size_t v) noexcept { return VertexSet{1} << v; }

constexpr int popcount(VertexSet s) noexcept { return std::popcount(s); }

constexpr std::size_t lowest(VertexSet s) noexcept {
    return static_cast<std::size_t>(std::countr_zero(s));
}

/// Calls fn(v) for every vertex index v in s, ascending.
template <typename Fn>
constexpr void for_each_vertex(VertexSet s, Fn&& fn) {
    while (s != 0) {
        fn(lowest(s));
        s &= s - 1;
    }
}

/// Simple undirected graph whose vertices carry unique string names. Vertex
/// indices follow insertion order and never change.
class Graph {
public:
    Graph() = default;

    explicit Graph(const std::vector<std::string>& names) {
        for (const auto& n : names) add_vertex(n);
    }

    std::size_t add_vertex(std::string name) {
        if (name.empty()) throw validation_error("vertex name must not be empty");
        if (index_.contains(name)) throw validation_error("duplicate vertex '" + name + "'");
        if (names_.size() == max_vertices)
            throw validation_error("graphs are limited to " + std::to_string(max_vertices) + " vertices");
        const std::size_t v = names_.size();
        index_.emplace(name, v);
        names_.push_back(std::move(name));
        adj_.push_back(0);
        return v;
    }

    /// Returns false if the edge was already present.
    bool add_edge(std::size_t u, std::size_t v) {
        check_index(u);
        check_index(v);
        if (u == v) throw validation_error("self-loop on '" + names_[u] + "'");
        if (adj_[u] & bit(v)) return false;
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
        ++edge_count_;
        return true;
    }

    bool add_edge(std::string_view u, std::string_view v) { return add_edge(index_of(u), index_of(v)); }

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

    [[nodiscard]] VertexSet all() const noexcept {
        return names_.size() == 64 ? ~VertexSet{0} : bit(names_.size()) - 1;
    }

    [[nodiscard]] const std::string& name(std::size_t v) const {
        check_index(v);
        return names_[v];
    }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] std::size_t index_of(std::string_view name) const {
        if (auto v = find(name)) return *v;
        throw validation_error("unknown vertex '" + std::string(name) + "'");
    }

    [[nodiscard]] VertexSet neighbors(std::size_t v) const noexcept { return adj_[v]; }
    [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const noexcept { return (adj_[u] & bit(v)) != 0; }
    [[nodiscard]] std::size_t degree(std::size_t v) const noexcept {
        return static_cast<std::size_t>(popcount(adj_[v]));
    }

    /// Edges as (u, v) with u < v, sorted.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(edge_count_);
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for_each_vertex(adj_[u] & ~(bit(u + 1) - 1), [&](std::size_t v) { out.emplace_back(u, v); });
        return out;
    }

    /// Mask of the named vertices; throws on unknown or repeated names.
    [[nodiscard]] VertexSet mask_of(const std::vector<std::string>& names) const {
        VertexSet s = 0;
        for (const auto& n : names) {
            const auto v = index_of(n);
            if (s & bit(v)) throw validation_error("vertex '" + n + "' listed twice");
            s |= bit(v);
        }
        return s;
    }

    [[nodiscard]] std::vector<std::string> names_of(VertexSet s) const {
        std::vector<std::string> out;
        for_each_vertex(s, [&](std::size_t v) { out.push_back(names_[v]); });
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.names_ == b.names_ && a.adj_ == b.adj_; }

private:
    void check_index(std::size_t v) const {
        if (v >= names_.size()) throw validation_error("vertex index " + std::to_string(v) + " out of range");
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<VertexSet> adj_;
    std::size_t edge_count_ = 0;
};

/// Complement on the same vertex set (same names, same order).
inline Graph complement(const Graph& g) {
    Graph c(g.names());
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v)
            if (!g.has_edge(u, v)) c.add_edge(u, v);
    return c;
}

/// Subgraph induced by s; vertex order is preserved.
inline Graph induced_subgraph(const Graph& g, VertexSet s) {
    Graph h(g.names_of(s));
    for (auto [u, v] : g.edges())
        if ((s & bit(u)) && (s & bit(v))) h.add_edge(g.name(u), g.name(v));
    return h;
}

inline bool is_simplicial(const Graph& g, std::size_t v) {
    const VertexSet nb = g.neighbors(v);
    bool clique = true;
    for_each_vertex(nb, [&](std::size_t u) {
        if (nb & ~(g.neighbors(u) | bit(u))) clique = false;
    });
    return clique;
}

inline bool is_simplicial(const Graph& g, std::string_view v) { return is_simplicial(g, g.index_of(v)); }

// ---------------------------------------------------------------------------
// Text format:
//   n m
//   <n vertex names, one per line>
//   <m lines "name1 name2">
// '#' starts a comment that runs to the end of the line.

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(first, last - first + 1));
    }
    return lines;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

}  // namespace detail

inline Graph read_graph(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw validation_error("graph file: missing 'n m' header");
    const auto header = detail::split_ws(lines[0]);
    std::size_t n = 0, m = 0;
    try {
        if (header.size() != 2) throw std::invalid_argument("");
        std::size_t pos = 0;
        n = std::stoul(header[0], &pos);
        if (pos != header[0].size()) throw std::invalid_argument("");
        m = std::stoul(header[1], &pos);
        if (pos != header[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw validation_error("graph file: header must be two non-negative integers 'n m', got '" + lines[0] + "'");
    }
    if (lines.size() != 1 + n + m)
        throw validation_error("graph file: expected " + std::to_string(n) + " vertex lines and " +
                               std::to_string(m) + " edge lines, found " + std::to_string(lines.size() - 1) +
                               " content lines");
    Graph g;
    for (std::size_t i = 0; i < n; ++i) {
        const auto tok = detail::split_ws(lines[1 + i]);
        if (tok.size() != 1) throw validation_error("graph file: vertex line must hold one name: '" + lines[1 + i] + "'");
        g.add_vertex(tok[0]);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& line = lines[1 + n + i];
        const auto tok = detail::split_ws(line);
        if (tok.size() != 2) throw validation_error("graph file: edge line must hold two names: '" + line + "'");
        if (!g.add_edge(tok[0], tok[1])) throw validation_error("graph file: parallel edge '" + line + "'");
    }
    return g;
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << g.size() << ' ' << g.edge_count() << '\n';
    for (const auto& n : g.names()) out << n << '\n';
    for (auto [u, v] : g.edges()) out << g.name(u) << ' ' << g.name(v) << '\n';
}

inline std::string to_text(const Graph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

}  // namespace widthforge

#endif
