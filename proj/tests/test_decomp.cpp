#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "naive_oracle.hpp"
#include "widthforge/decomp.hpp"
#include "widthforge/newick.hpp"

using namespace widthforge;

namespace {

std::vector<std::string> letters(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
    return out;
}

Graph edgeless(std::size_t n) { return Graph(letters(n)); }

std::multiset<VertexSet> normalized_cuts(const BranchDecomposition& t, const Graph& g) {
    // each cut stored by the side not containing vertex 0
    std::multiset<VertexSet> out;
    for (const auto& tc : cuts_of(t, g)) {
        const VertexSet a = tc.cut.side_a();
        out.insert((a & 1) ? g.all() & ~a : a);
    }
    return out;
}

}  // namespace

TEST_CASE("total orders") {
    const TotalOrder o({"a", "b", "c"});
    CHECK(o.size() == 3);
    CHECK(o.reversed().sequence() == std::vector<std::string>{"c", "b", "a"});
    CHECK(o.positions().at("c") == 2);
    CHECK_THROWS_AS(TotalOrder({"a", "a"}), validation_error);
    CHECK_THROWS_AS(TotalOrder({"a", ""}), validation_error);
}

TEST_CASE("caterpillar from order") {
    const auto t = caterpillar_from_order(TotalOrder({"a", "b", "c", "d"}));
    t.validate();
    CHECK(t.leaf_count() == 4);
    CHECK(t.node_count() == 6);
    // a and b share a spine node, c and d share the other
    const NodeId sa = t.neighbors(*t.leaf_of("a")).front();
    const NodeId sc = t.neighbors(*t.leaf_of("c")).front();
    CHECK(t.neighbors(*t.leaf_of("b")).front() == sa);
    CHECK(t.neighbors(*t.leaf_of("d")).front() == sc);
    CHECK(sa != sc);
    CHECK(to_newick(t) == "(a,b,(c,d));");

    const auto two = caterpillar_from_order(TotalOrder({"a", "b"}));
    CHECK(two.node_count() == 2);
    CHECK(two.edges().size() == 1);
    CHECK(caterpillar_from_order(TotalOrder({"x"})).node_count() == 1);
    CHECK(caterpillar_from_order(TotalOrder({"a", "b", "c"})).node_count() == 4);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto seq = letters(6);
        std::shuffle(seq.begin(), seq.end(), rng);
        const auto c = caterpillar_from_order(TotalOrder(seq));
        c.validate();
        std::size_t internal = 0;
        for (NodeId u = 0; u < c.node_count(); ++u)
            if (!c.is_leaf(u)) {
                ++internal;
                CHECK(c.neighbors(u).size() == 3);
            }
        CHECK(internal == 4);
        CHECK(is_caterpillar(c));
    }
}

TEST_CASE("realized orders") {
    const auto t = caterpillar_from_order(TotalOrder({"a", "b", "c", "d"}));
    CHECK(realizes(t, TotalOrder({"b", "a", "c", "d"})));
    CHECK(realizes(t, TotalOrder({"d", "c", "a", "b"})));
    CHECK_FALSE(realizes(t, TotalOrder({"a", "c", "b", "d"})));
    CHECK_FALSE(realizes(t, TotalOrder({"a", "b", "c"})));

    // exactly the 8 symmetric variants are realized
    OrderEnumerator all(letters(4));
    int count = 0;
    while (auto o = all.next()) count += realizes(t, *o);
    CHECK(count == 8);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto seq = letters(2 + trial % 8);
        std::shuffle(seq.begin(), seq.end(), rng);
        const TotalOrder o(seq);
        CHECK(realizes(caterpillar_from_order(o), o));
        CHECK(realizes(caterpillar_from_order(o), o.reversed()));
    }
}

TEST_CASE("caterpillar recognition") {
    CHECK_FALSE(is_caterpillar(parse_newick("(((a,b),(c,d)),((e,f),(g,h)));")));
    CHECK(is_caterpillar(parse_newick("((a,b),(c,d));")));
    TernaryTreeEnumerator four(letters(4));
    while (auto t = four.next()) CHECK(is_caterpillar(*t));
}

TEST_CASE("cuts of a decomposition") {
    const Graph g = edgeless(4);
    const auto t = caterpillar_from_order(TotalOrder({"a", "b", "c", "d"}));
    const auto cuts = cuts_of(t, g);
    CHECK(cuts.size() == 5);
    int singles = 0, middle = 0;
    for (const auto& tc : cuts) {
        tc.cut.validate(g);
        CHECK(tc.cut.side_a() != 0);
        CHECK(tc.cut.side_b() != 0);
        const int sz = popcount(tc.cut.side_a());
        if (sz == 1 || sz == 3) ++singles;
        if (sz == 2) {
            ++middle;
            const VertexSet ab = g.mask_of({"a", "b"});
            CHECK((tc.cut.side_a() == ab || tc.cut.side_b() == ab));
        }
    }
    CHECK(singles == 4);
    CHECK(middle == 1);

    CHECK_THROWS_AS(cuts_of(t, edgeless(5)), validation_error);
    CHECK_THROWS_AS(cuts_of(t, Graph({"a", "b", "c", "z"})), validation_error);

    TernaryTreeEnumerator six(letters(6));
    while (auto tr = six.next()) CHECK(cuts_of(*tr, edgeless(6)).size() == 9);
}

TEST_CASE("spine cuts of a caterpillar are the prefixes of its order") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + trial % 5;
        const Graph g = edgeless(n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::string> seq;
        for (auto v : perm) seq.push_back(g.name(v));
        std::multiset<VertexSet> want;
        for (VertexSet a : oracle::order_cuts(perm)) want.insert((a & 1) ? g.all() & ~a : a);
        // order_cuts lists the first and last singletons twice
        const VertexSet first = bit(perm.front()), last = g.all() & ~bit(perm.back());
        want.erase(want.find((first & 1) ? g.all() & ~first : first));
        want.erase(want.find((last & 1) ? g.all() & ~last : last));
        CHECK(normalized_cuts(caterpillar_from_order(TotalOrder(seq)), g) == want);
    }
}

TEST_CASE("cut multiset does not depend on node numbering") {
    const Graph g = edgeless(6);
    const auto t = parse_newick("((a,f),(b,e),(c,d));");
    const auto u = parse_newick("((d,c),(e,b),(f,a));");
    CHECK(normalized_cuts(t, g) == normalized_cuts(u, g));
}

TEST_CASE("ternary tree enumeration") {
    CHECK(ternary_tree_count(3) == 1);
    CHECK(ternary_tree_count(4) == 3);
    CHECK(ternary_tree_count(5) == 15);
    CHECK(ternary_tree_count(6) == 105);
    CHECK(ternary_tree_count(7) == 945);
    for (std::size_t n = 1; n <= 7; ++n) {
        TernaryTreeEnumerator e(letters(n));
        std::set<std::string> forms;
        std::size_t count = 0;
        while (auto t = e.next()) {
            t->validate();
            CHECK(t->leaf_count() == n);
            forms.insert(canonical_form(*t));
            ++count;
        }
        INFO("n = " << n);
        CHECK(count == ternary_tree_count(n));
        CHECK(forms.size() == count);
        if (n >= 1 && n <= 6) CHECK(count == std::max<std::size_t>(1, oracle::all_trees(n).size()));
        e.reset();
        CHECK(e.next().has_value());
    }
    CHECK_THROWS_AS(TernaryTreeEnumerator({}), validation_error);
    CHECK_THROWS_AS(TernaryTreeEnumerator({"a", "a", "b"}), validation_error);
}

TEST_CASE("order enumeration") {
    auto count = [](std::size_t n, bool skip) {
        OrderEnumerator e(letters(n), skip);
        int c = 0;
        while (e.next()) ++c;
        return c;
    };
    CHECK(count(3, false) == 6);
    CHECK(count(3, true) == 3);
    CHECK(count(0, false) == 1);
    CHECK(count(1, true) == 1);
    CHECK(count(5, true) == 60);

    // an order and its reverse give the same caterpillar cuts
    const Graph g = edgeless(5);
    OrderEnumerator e(letters(5));
    while (auto o = e.next())
        CHECK(normalized_cuts(caterpillar_from_order(*o), g) == normalized_cuts(caterpillar_from_order(o->reversed()), g));
}

TEST_CASE("partial tree undo restores the tree") {
    PartialTree p({"a", "b", "c"});
    const std::string before = canonical_form(p.tree());
    p.insert(1, "d");
    p.insert(3, "e");
    CHECK(p.tree().leaf_count() == 5);
    p.tree().validate();
    p.undo();
    p.undo();
    CHECK(canonical_form(p.tree()) == before);
    CHECK(p.tree().node_count() == 4);
    CHECK_THROWS_AS(PartialTree({"a", "b", "c", "d"}), validation_error);
}

TEST_CASE("tree validation") {
    BranchDecomposition t;
    const NodeId a = t.add_leaf("a");
    const NodeId b = t.add_leaf("b");
    const NodeId c = t.add_leaf("c");
    const NodeId m = t.add_internal();
    t.add_edge(m, a);
    t.add_edge(m, b);
    CHECK_THROWS_AS(t.validate(), validation_error);
    t.add_edge(m, c);
    CHECK_NOTHROW(t.validate());
    CHECK_THROWS_AS(t.add_leaf("a"), validation_error);
    CHECK_THROWS_AS(t.add_edge(m, a), validation_error);
}

TEST_CASE("newick round trip and errors") {
    const auto t = parse_newick("((a,b),(c,d));");
    CHECK(to_newick(t) == "(a,b,(c,d));");
    CHECK(canonical_form(t) == canonical_form(parse_newick("(a,b,(c,d));")));
    CHECK(to_newick(parse_newick("a;")) == "a;");
    CHECK(to_newick(parse_newick("(b,a);")) == "(a,b);");
    CHECK(to_newick(parse_newick(" ( c , b , a ) ; ")) == "(a,b,c);");

    TernaryTreeEnumerator e(letters(6));
    while (auto tr = e.next()) {
        const auto back = parse_newick(to_newick(*tr));
        CHECK(canonical_form(back) == canonical_form(*tr));
    }

    CHECK_THROWS_AS(parse_newick(""), validation_error);
    CHECK_THROWS_AS(parse_newick("(a,b,c)"), validation_error);
    CHECK_THROWS_AS(parse_newick("(a,b,c,d);"), validation_error);
    CHECK_THROWS_AS(parse_newick("((a,b,c),d,e);"), validation_error);
    CHECK_THROWS_AS(parse_newick("(a,(b),c);"), validation_error);
    CHECK_THROWS_AS(parse_newick("(a,b)x;"), validation_error);
    CHECK_THROWS_AS(parse_newick("(a:1,b,c);"), validation_error);
    CHECK_THROWS_AS(parse_newick("(a,a,b);"), validation_error);
    CHECK_THROWS_AS(parse_newick("(a,b,c);junk"), validation_error);
}

TEST_CASE("newick quotes labels with punctuation") {
    const auto t = parse_newick("('p:a','u:a:0',('x y','it''s'));");
    CHECK(t.leaf_of("it's"));
    CHECK(t.leaf_of("x y"));
    const std::string text = to_newick(t);
    CHECK(text == "('it''s',('p:a','u:a:0'),'x y');");
    CHECK(canonical_form(parse_newick(text)) == canonical_form(t));
    std::istringstream in("# tree\n('#1',b,c); # done\n");
    CHECK(read_newick(in).leaf_of("#1"));
    CHECK_THROWS_AS(parse_newick("('a,b,c);"), validation_error);
    CHECK_THROWS_AS(parse_newick("('',b,c);"), validation_error);
}
