#ifndef WIDTHFORGE_WIDTHS_HPP
#define WIDTHFORGE_WIDTHS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "widthforge/cut_values.hpp"
#include "widthforge/decomp.hpp"

namespace widthforge {

/// Which width: the cut value being maximised, and whether decompositions are
/// restricted to caterpillars.
struct WidthParam {
    CutKind kind = CutKind::mim;
    bool linear = false;

    [[nodiscard]] std::string name() const { return (linear ? "linear-" : "") + to_string(kind) + "-width"; }

    friend bool operator==(const WidthParam&, const WidthParam&) = default;
};

/// Limits for the exact searches. A search that hits either limit reports an
/// inconclusive result instead of an answer.
struct Budget {
    std::uint64_t max_nodes = 1'000'000'000;
    std::chrono::milliseconds max_time = std::chrono::minutes(15);
    unsigned threads = 1;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
    double elapsed_seconds = 0.0;
    bool budget_exhausted = false;
};

struct EdgeValue {
    NodeId first;
    NodeId second;
    std::vector<std::string> cut_a;
    int value;
};

/// Width of one decomposition, or the result of an exact search. When
/// `inconclusive_at` is set, the search proved every width below that value
/// impossible but ran out of budget there; `width` then equals that value and
/// there is no witness.
struct WidthReport {
    WidthParam param;
    int width = 0;
    std::optional<BranchDecomposition> witness;
    std::vector<EdgeValue> per_edge;
    SearchStats stats;
    std::optional<int> inconclusive_at;

    [[nodiscard]] bool conclusive() const noexcept { return !inconclusive_at.has_value(); }
};

enum class Decision { yes, no, inconclusive };

inline std::string to_string(Decision d) {
    switch (d) {
        case Decision::yes: return "yes";
        case Decision::no: return "no";
        case Decision::inconclusive: return "inconclusive";
    }
    return "?";
}

struct DecisionResult {
    Decision decision = Decision::inconclusive;
    std::optional<BranchDecomposition> witness;
    SearchStats stats;
};

/// Evaluates the chosen cut value on every edge of t.
inline WidthReport decomposition_width(const Graph& g, const BranchDecomposition& t, WidthParam p) {
    t.validate();
    if (p.linear && !is_caterpillar(t))
        throw validation_error("a linear width parameter needs a caterpillar decomposition");
    WidthReport r;
    r.param = p;
    r.witness = t;
    for (const auto& tc : cuts_of(t, g)) {
        const int v = cut_value(g, tc.cut.side_a(), tc.cut.side_b(), p.kind);
        r.per_edge.push_back(EdgeValue{tc.first, tc.second, g.names_of(tc.cut.side_a()), v});
        r.width = std::max(r.width, v);
    }
    return r;
}

namespace detail {

class SearchControl {
public:
    explicit SearchControl(const Budget& b)
        : start_(std::chrono::steady_clock::now()), deadline_(start_ + b.max_time), max_nodes_(b.max_nodes) {}

    /// Counts one search node; false once the budget is gone.
    bool tick() {
        const auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > max_nodes_ || ((n & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_))
            aborted_.store(true, std::memory_order_relaxed);
        return !aborted_.load(std::memory_order_relaxed);
    }

    void prune() { pruned_.fetch_add(1, std::memory_order_relaxed); }
    [[nodiscard]] bool aborted() const { return aborted_.load(std::memory_order_relaxed); }

    [[nodiscard]] SearchStats stats() const {
        SearchStats s;
        s.nodes = std::min(nodes_.load(), max_nodes_);
        s.pruned = pruned_.load();
        s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        s.budget_exhausted = aborted();
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t max_nodes_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<std::uint64_t> pruned_{0};
    std::atomic<bool> aborted_{false};
};

// Copy of g with vertices sorted by descending degree, ties by name.
inline Graph search_ordered(const Graph& g) {
    std::vector<std::size_t> idx(g.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return g.name(a) < g.name(b);
    });
    Graph h;
    for (auto i : idx) h.add_vertex(g.name(i));
    for (auto [u, v] : g.edges()) h.add_edge(g.name(u), g.name(v));
    return h;
}

// Scatters the low bits of `index` into the set bits of `mask`, lowest first.
inline VertexSet deposit(std::uint64_t index, VertexSet mask) {
    VertexSet out = 0;
    for (VertexSet m = mask; m != 0 && index != 0; m &= m - 1, index >>= 1)
        if (index & 1) out |= m & (~m + 1);
    return out;
}

// Runs candidates 0..count-1 in ascending order (striped over threads) and
// returns the smallest index whose try_candidate succeeded, plus the worker
// that holds its state. Workers skip indices above the best success so far,
// so the answer does not depend on the thread count.
template <typename Worker, typename Make>
std::optional<std::pair<std::uint64_t, std::unique_ptr<Worker>>> first_success(std::uint64_t count, unsigned threads,
                                                                               SearchControl& ctl, Make make) {
    threads = std::max(1u, threads);
    std::vector<std::unique_ptr<Worker>> workers;
    for (unsigned t = 0; t < threads; ++t) workers.push_back(make());
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::vector<std::uint64_t> won(threads, std::numeric_limits<std::uint64_t>::max());

    auto run = [&](unsigned t) {
        for (std::uint64_t i = t; i < count; i += threads) {
            if (i > best.load() || ctl.aborted()) return;
            if (workers[t]->try_candidate(i)) {
                won[t] = i;
                auto cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
                return;
            }
        }
    };
    if (threads == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }
    const auto b = best.load();
    if (b == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    for (unsigned t = 0; t < threads; ++t)
        if (won[t] == b) return std::make_pair(b, std::move(workers[t]));
    return std::nullopt;
}

// Caterpillar search: grows the vertex order one vertex at a time. The cut
// of a prefix is final, so a prefix whose cut exceeds w is dropped, and every
// prefix set that cannot be completed is remembered.
class LinearSearch {
public:
    LinearSearch(const Graph& g, CutKind kind, int w, SearchControl& ctl)
        : g_(g), kind_(kind), w_(w), ctl_(ctl), all_(g.all()) {}

    bool try_candidate(std::uint64_t first) {
        seq_.clear();
        return step(0, static_cast<std::size_t>(first));
    }

    [[nodiscard]] TotalOrder order() const {
        std::vector<std::string> names;
        for (auto v : seq_) names.push_back(g_.name(v));
        return TotalOrder(std::move(names));
    }

private:
    bool step(VertexSet placed, std::size_t v) {
        const VertexSet next = placed | bit(v);
        if (dead_.contains(next)) return false;
        if (!ctl_.tick()) return false;
        if (cut_value(g_, next, all_ & ~next, kind_, w_ + 1) > w_) {
            ctl_.prune();
            dead_.insert(next);
            return false;
        }
        seq_.push_back(v);
        if (next == all_) return true;
        for (std::size_t u = 0; u < g_.size(); ++u) {
            if (next & bit(u)) continue;
            if (step(next, u)) return true;
            if (ctl_.aborted()) return false;
        }
        seq_.pop_back();
        dead_.insert(next);
        return false;
    }

    const Graph& g_;
    CutKind kind_;
    int w_;
    SearchControl& ctl_;
    VertexSet all_;
    std::unordered_set<VertexSet> dead_;
    std::vector<std::size_t> seq_;
};

// General search over vertex subsets: a set S is buildable if it is a single
// vertex, or splits into two buildable parts whose cuts (part, V \ part) are
// both within w. V itself buildable means a decomposition of width <= w.
class GeneralSearch {
public:
    GeneralSearch(const Graph& g, CutKind kind, int w, SearchControl& ctl)
        : g_(g), kind_(kind), w_(w), ctl_(ctl), all_(g.all()) {}

    [[nodiscard]] static std::uint64_t top_candidates(const Graph& g) {
        if (g.size() < 2) return 0;
        return (std::uint64_t{1} << (g.size() - 1)) - 1;
    }

    bool try_candidate(std::uint64_t index) {
        const VertexSet low = all_ & (~all_ + 1);
        const VertexSet part = low | deposit(index, all_ & ~low);
        if (!split_ok(part, all_ & ~part)) return false;
        top_ = part;
        return true;
    }

    [[nodiscard]] BranchDecomposition tree() const {
        BranchDecomposition t;
        if (g_.size() == 1) {
            t.add_leaf(g_.name(0));
            return t;
        }
        const NodeId a = build(t, top_);
        const NodeId b = build(t, all_ & ~top_);
        t.add_edge(a, b);
        return t;
    }

private:
    bool good(VertexSet s) {
        const VertexSet key = std::min(s, all_ & ~s);
        if (auto it = good_.find(key); it != good_.end()) return it->second;
        const bool ok = cut_value(g_, s, all_ & ~s, kind_, w_ + 1) <= w_;
        if (!ok) ctl_.prune();
        good_.emplace(key, ok);
        return ok;
    }

    bool split_ok(VertexSet a, VertexSet b) {
        if (!ctl_.tick()) return false;
        return good(a) && good(b) && buildable(a) && buildable(b);
    }

    bool buildable(VertexSet s) {
        if (popcount(s) == 1) return true;
        if (auto it = split_.find(s); it != split_.end()) return it->second != 0;
        const VertexSet low = s & (~s + 1);
        const VertexSet rest = s & ~low;
        // ascending submasks of rest, excluding rest itself
        for (VertexSet t = 0; t != rest; t = (t - rest) & rest) {
            const VertexSet part = low | t;
            if (split_ok(part, s & ~part)) {
                split_.emplace(s, part);
                return true;
            }
            if (ctl_.aborted()) return false;
        }
        split_.emplace(s, 0);
        return false;
    }

    NodeId build(BranchDecomposition& t, VertexSet s) const {
        if (popcount(s) == 1) return t.add_leaf(g_.name(lowest(s)));
        const VertexSet part = split_.at(s);
        const NodeId self = t.add_internal();
        t.add_edge(self, build(t, part));
        t.add_edge(self, build(t, s & ~part));
        return self;
    }

    const Graph& g_;
    CutKind kind_;
    int w_;
    SearchControl& ctl_;
    VertexSet all_;
    VertexSet top_ = 0;
    std::unordered_map<VertexSet, bool> good_;
    std::unordered_map<VertexSet, VertexSet> split_;
};

inline DecisionResult decide(const Graph& input, WidthParam p, int w, const Budget& budget, SearchControl& ctl) {
    if (w < 0) throw validation_error("width bound must be non-negative");
    DecisionResult r;
    const Graph g = search_ordered(input);
    const std::size_t n = g.size();
    if (n <= 1) {
        r.decision = Decision::yes;
        r.witness = caterpillar_from_order(TotalOrder(g.names()));
        return r;
    }
    // Leaf cuts exist in every decomposition.
    for (std::size_t v = 0; v < n; ++v) {
        if (cut_value(g, bit(v), g.all() & ~bit(v), p.kind, w + 1) > w) {
            r.decision = Decision::no;
            return r;
        }
    }
    if (p.linear) {
        auto hit = first_success<LinearSearch>(n, budget.threads, ctl,
                                               [&] { return std::make_unique<LinearSearch>(g, p.kind, w, ctl); });
        if (hit) {
            r.decision = Decision::yes;
            r.witness = caterpillar_from_order(hit->second->order());
        } else {
            r.decision = ctl.aborted() ? Decision::inconclusive : Decision::no;
        }
    } else {
        auto hit = first_success<GeneralSearch>(GeneralSearch::top_candidates(g), budget.threads, ctl, [&] {
            return std::make_unique<GeneralSearch>(g, p.kind, w, ctl);
        });
        if (hit) {
            r.decision = Decision::yes;
            r.witness = hit->second->tree();
        } else {
            r.decision = ctl.aborted() ? Decision::inconclusive : Decision::no;
        }
    }
    return r;
}

}  // namespace detail

/// Decides whether the width of g is at most w. "no" is only returned after
/// the search space has been exhausted; a budget overrun gives inconclusive.
inline DecisionResult decide_width_leq(const Graph& g, WidthParam p, int w, const Budget& budget = {}) {
    detail::SearchControl ctl(budget);
    auto r = detail::decide(g, p, w, budget, ctl);
    r.stats = ctl.stats();
    if (r.decision != Decision::inconclusive) r.stats.budget_exhausted = false;
    return r;
}

/// Exact width by iterative deepening on w starting at 0; the budget covers
/// the whole run.
inline WidthReport exact_width(const Graph& g, WidthParam p, const Budget& budget = {}) {
    detail::SearchControl ctl(budget);
    for (int w = 0;; ++w) {
        auto d = detail::decide(g, p, w, budget, ctl);
        if (d.decision == Decision::yes) {
            auto r = decomposition_width(g, *d.witness, p);
            r.stats = ctl.stats();
            r.stats.budget_exhausted = false;
            return r;
        }
        if (d.decision == Decision::inconclusive) {
            WidthReport r;
            r.param = p;
            r.width = w;
            r.inconclusive_at = w;
            r.stats = ctl.stats();
            return r;
        }
    }
}

}  // namespace widthforge

#endif
