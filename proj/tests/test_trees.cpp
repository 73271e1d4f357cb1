#include <set>

#include "doctest.h"
#include "treelie/trees.hpp"

using namespace treelie::trees;

TEST_CASE("labels: tokens and ordering") {
    CHECK(strand(3).token() == "3");
    CHECK(symp_x(2).token() == "x2");
    CHECK(symp_y(1).token() == "y1");
    CHECK(infinity_label().token() == "inf");
    CHECK(symp_x(1).letter() == 1);
    CHECK(symp_y(1).letter() == 2);
    CHECK(symp_x(2).letter() == 3);
    CHECK(label_less(strand(1), strand(2)));
    CHECK_FALSE(label_less(strand(2), strand(2)));
}

TEST_CASE("parse/format round trips") {
    for (const char* s : {"1-2", "2-2", "<1,2,3>", "<1,2,(3,3)>", "<(1,2),3,(1,(2,2))>"}) {
        auto t = parse_unitrivalent(s, 3);
        CHECK(format_unitrivalent(t) == s);
    }
    for (const char* s : {"1", "(1,2)", "(1,(2,3))", "((1,2),(3,1))"}) {
        auto t = parse_rooted(s, 3);
        CHECK(format_rooted(t) == s);
    }
    auto inf = parse_unitrivalent("<1,inf,(2,3)>", 3, true);
    CHECK(inf.infinity_count() == 1);
    CHECK(format_unitrivalent(inf) == "<1,inf,(2,3)>");
    CHECK_THROWS(parse_unitrivalent("<1,inf,2>", 3));   // infinity not allowed
    CHECK_THROWS(parse_unitrivalent("<1,4,2>", 3));     // label out of range
    CHECK_THROWS(parse_unitrivalent("(1,2)", 3));       // rooted grammar is not a tree
    CHECK_THROWS(parse_rooted("<1,2,3>", 3));
}

TEST_CASE("orders and leaves") {
    auto bar = parse_unitrivalent("1-2", 2);
    CHECK(bar.order() == 0);
    CHECK(bar.leaf_count() == 2);
    auto y = parse_unitrivalent("<1,2,3>", 3);
    CHECK(y.order() == 1);
    CHECK(y.leaf_count() == 3);
    auto h = parse_unitrivalent("<1,2,(3,4)>", 4);
    CHECK(h.order() == 2);
    auto ls = h.leaves();
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == strand(1));
    CHECK(ls[3] == strand(4));
}

TEST_CASE("root_at: cyclic reading after the incoming edge") {
    auto h = parse_unitrivalent("<1,2,(3,4)>", 4);
    CHECK(format_rooted(root_at(h, 0)) == "(2,(3,4))");
    CHECK(format_rooted(root_at(h, 1)) == "((3,4),1)");
    CHECK(format_rooted(root_at(h, 2)) == "(4,(1,2))");
    CHECK(format_rooted(root_at(h, 3)) == "((1,2),3)");
    auto bar = parse_unitrivalent("1-2", 2);
    CHECK(format_rooted(root_at(bar, 0)) == "2");
    CHECK(format_rooted(root_at(bar, 1)) == "1");
}

TEST_CASE("graft: edge join of two rooted trees") {
    auto l1 = RootedTree::leaf(strand(1));
    auto l2 = RootedTree::leaf(strand(2));
    auto l3 = RootedTree::leaf(strand(3));
    CHECK(format_unitrivalent(graft(l1, l2)) == "1-2");
    auto n12 = RootedTree::node(l1, l2);
    CHECK(format_unitrivalent(graft(n12, l3)) == "<3,1,2>");
    CHECK(format_unitrivalent(graft(l3, n12)) == "<3,1,2>");
    CHECK(graft(n12, l3).order() == 1);
    CHECK(format_unitrivalent(cap_infty(n12)) == "<inf,1,2>");
    // grafting either way along the same edge yields the same unoriented tree
    auto c1 = canonicalize(graft(n12, l3)), c2 = canonicalize(graft(l3, n12));
    CHECK(c1.key == c2.key);
}

TEST_CASE("canonicalize: cyclic rotations are even, swaps are odd") {
    auto base = canonicalize(parse_unitrivalent("<1,2,3>", 3));
    auto rot = canonicalize(parse_unitrivalent("<2,3,1>", 3));
    auto swap = canonicalize(parse_unitrivalent("<2,1,3>", 3));
    CHECK(base.key == rot.key);
    CHECK(base.key == swap.key);
    CHECK(base.sign == 1);
    CHECK(rot.sign == 1);
    CHECK(swap.sign == -1);
    CHECK_FALSE(base.symmetric);
    CHECK(format_unitrivalent(swap.tree) == "<1,2,3>");
}

TEST_CASE("canonicalize: symmetry detection") {
    CHECK(canonicalize(parse_unitrivalent("<1,2,2>", 2)).symmetric);
    CHECK(canonicalize(parse_unitrivalent("<1,1,1>", 1)).symmetric);
    CHECK_FALSE(canonicalize(parse_unitrivalent("1-1", 1)).symmetric);  // bars never are
    CHECK_FALSE(canonicalize(parse_unitrivalent("1-2", 2)).symmetric);
}

TEST_CASE("canonicalize: idempotent on its own representative") {
    for (const char* s :
         {"1-1", "<1,2,3>", "<(2,1),3,(1,(2,2))>", "<1,(2,2),(2,2)>", "<inf,1,2>"}) {
        auto c = canonicalize(parse_unitrivalent(s, 3, true));
        auto again = canonicalize(c.tree);
        CHECK(again.key == c.key);
        CHECK(again.sign == 1);
        CHECK(again.symmetric == c.symmetric);
        CHECK(c.order == c.tree.order());
    }
}

TEST_CASE("enumerate_trees: counts and strict key order") {
    long counts[4][3] = {{1, 3, 6}, {1, 4, 10}, {1, 6, 21}, {1, 12, 63}};
    for (int n = 0; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            auto v = enumerate_trees(n, m);
            CHECK(long(v.size()) == counts[n][m - 1]);
            for (auto& c : v) {
                CHECK(c.order == n);
                CHECK(c.sign == 1);
            }
            for (size_t i = 0; i + 1 < v.size(); ++i) CHECK(v[i].key < v[i + 1].key);
        }
}

TEST_CASE("enumerate_infty_trees: counts, one infinity leaf each") {
    long counts[3][3] = {{1, 3, 6}, {1, 6, 18}, {2, 18, 75}};
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            auto v = enumerate_infty_trees(n, m);
            CHECK(long(v.size()) == counts[n - 1][m - 1]);
            for (auto& c : v) CHECK(c.tree.infinity_count() == 1);
        }
    CHECK(enumerate_infty_trees(0, 2).empty());
}

TEST_CASE("enumerate_rooted: Catalan times labelings") {
    CHECK(enumerate_rooted(0, 2).size() == 2);
    CHECK(enumerate_rooted(1, 2).size() == 4);
    CHECK(enumerate_rooted(2, 2).size() == 16);
    CHECK(enumerate_rooted(3, 2).size() == 80);
    CHECK(enumerate_rooted(3, 1).size() == 5);
    std::set<std::string> seen;
    for (auto& t : enumerate_rooted(2, 2)) seen.insert(t->enc());
    CHECK(seen.size() == 16);
}

TEST_CASE("enumeration honors the cap") {
    CHECK_THROWS_AS(enumerate_trees(3, 3, 10), EnumerationCap);
    CHECK_THROWS_AS(enumerate_rooted(3, 2, 10), EnumerationCap);
}
