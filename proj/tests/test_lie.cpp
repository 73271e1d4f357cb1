#include "doctest.h"
#include "treelie/lie.hpp"

using namespace treelie;
using namespace treelie::lie;
using treelie::zlin::Int;

TEST_CASE("witt_rank: classical table") {
    long m2[] = {2, 1, 2, 3, 6, 9, 18, 30};
    for (int n = 1; n <= 8; ++n) CHECK(witt_rank(n, 2) == m2[n - 1]);
    long m3[] = {3, 3, 8, 18, 48, 116};
    for (int n = 1; n <= 6; ++n) CHECK(witt_rank(n, 3) == m3[n - 1]);
    CHECK(witt_rank(1, 1) == 1);
    CHECK(witt_rank(2, 1) == 0);
}

TEST_CASE("lyndon words and standard factorization") {
    CHECK(is_lyndon("a"));
    CHECK(is_lyndon("ab"));
    CHECK_FALSE(is_lyndon("ba"));
    CHECK_FALSE(is_lyndon("aa"));
    CHECK(is_lyndon("aab"));
    auto w32 = lyndon_words(3, 2);
    CHECK(w32 == std::vector<std::string>{"aab", "abb"});
    CHECK(long(lyndon_words(5, 2).size()) == witt_rank(5, 2));
    CHECK(long(lyndon_words(4, 3).size()) == witt_rank(4, 3));
    CHECK(standard_factorization("aabab") == std::pair<std::string, std::string>{"aab", "ab"});
    CHECK(standard_factorization("ab") == std::pair<std::string, std::string>{"a", "b"});
    CHECK(trees::format_rooted(standard_bracketing("aab")) == "(1,(1,2))");
    CHECK(trees::format_rooted(standard_bracketing("abb")) == "((1,2),2)");
}

TEST_CASE("to_basis: Lyndon coordinates invert standard bracketing") {
    for (int n = 1; n <= 4; ++n)
        for (auto& w : lyndon_words(n, 2)) {
            auto coords = to_basis(tensor_expand(standard_bracketing(w)));
            REQUIRE(coords.has_value());
            CHECK(*coords == std::map<std::string, Int>{{w, 1}});
        }
    CHECK_FALSE(to_basis(Tensor{{"ab", 1}}).has_value());  // not primitive
    CHECK(to_basis(Tensor{})->empty());
}

TEST_CASE("tensor_bracket: antisymmetry and Jacobi") {
    auto a = tensor_expand(trees::parse_rooted("1", 3));
    auto b = tensor_expand(trees::parse_rooted("(2,3)", 3));
    auto c = tensor_expand(trees::parse_rooted("(1,2)", 3));
    Tensor ab = tensor_bracket(a, b), ba = tensor_bracket(b, a);
    tensor_axpy(ab, ba, 1);
    CHECK(ab.empty());
    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] == 0
    Tensor j = tensor_bracket(a, tensor_bracket(b, c));
    tensor_axpy(j, tensor_bracket(b, tensor_bracket(c, a)), 1);
    tensor_axpy(j, tensor_bracket(c, tensor_bracket(a, b)), 1);
    CHECK(j.empty());
}

TEST_CASE("monomial_to_basis: frozen examples") {
    auto y = monomial_to_basis(trees::parse_rooted("(1,(2,3))", 3));
    CHECK(y == std::map<std::string, Int>{{"abc", 1}});
    auto y2 = monomial_to_basis(trees::parse_rooted("((2,3),1)", 3));
    CHECK(y2 == std::map<std::string, Int>{{"abc", -1}});
    auto big = monomial_to_basis(trees::parse_rooted("(((2,3),1),(2,3))", 3));
    CHECK(big == std::map<std::string, Int>{{"abcbc", -1}});
    CHECK(monomial_to_basis(trees::parse_rooted("((1,1),2)", 2)).empty());
}

TEST_CASE("lie_presented: ranks match witt, no torsion") {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 4; ++n) {
            auto g = lie_presented(n, m);
            auto r = g.report();
            CHECK(r.free_rank == witt_rank(n, m));
            CHECK(r.torsion.empty());
        }
}

TEST_CASE("quasi_lie_presented: frozen structures") {
    auto check = [](int n, int m, long free, size_t two) {
        auto r = quasi_lie_presented(n, m).report();
        CHECK(r.free_rank == free);
        REQUIRE(r.torsion.size() == two);
        for (auto& t : r.torsion) CHECK(t == 2);
    };
    check(2, 2, 1, 2);   // witt(2,2) free, witt(1,2) squares
    check(4, 2, 3, 1);   // witt(4,2) free, witt(2,2) squares
    check(2, 3, 3, 3);
    check(3, 2, 2, 0);   // odd degrees stay free
    check(3, 3, 8, 0);
}

TEST_CASE("quasi rewriter: squares and projection to the Lie ring") {
    QuasiRewriter rw;
    auto sq_a = rw.bracket(rw.from_word("a"), rw.from_word("a"));
    CHECK(sq_a.lie.empty());
    CHECK(sq_a.torsion == std::set<std::string>{"a"});
    auto sq_ab = rw.bracket(rw.from_word("ab"), rw.from_word("ab"));
    CHECK(sq_ab.lie.empty());
    CHECK(sq_ab.torsion == std::set<std::string>{"ab"});

    // brackets of distinct basis words agree with the tensor-algebra bracket
    for (auto& u : lyndon_words(2, 2))
        for (auto& v : lyndon_words(1, 2)) {
            auto q = rw.bracket(rw.from_word(u), rw.from_word(v));
            CHECK(q.torsion.empty());
            auto t = to_basis(tensor_bracket(tensor_expand(standard_bracketing(u)),
                                             tensor_expand(standard_bracketing(v))));
            REQUIRE(t.has_value());
            CHECK(q.lie == *t);
        }

    // torsion is killed by any further bracketing (Jacobi square identity)
    auto killed = rw.bracket(sq_a, rw.from_word("b"));
    CHECK(killed.zero());
}

TEST_CASE("quasi rewriter: from_monomial matches from_word") {
    QuasiRewriter rw;
    for (auto& w : lyndon_words(3, 2))
        CHECK(rw.from_monomial(standard_bracketing(w)) == rw.from_word(w));
    auto e = rw.from_monomial(trees::parse_rooted("((1,1),2)", 2));
    CHECK(e.lie.empty());  // [[a,a],b] = 0 in the quasi-Lie ring too
    CHECK(e.torsion.empty());
}

TEST_CASE("quasi rewriter: normal forms agree with the presented model") {
    // For every planar monomial t the rewriter returns sum c_w * w + squares;
    // the same identity must hold between the corresponding generators of the
    // SNF-presented quasi-Lie group.
    QuasiRewriter rw;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
        auto g = quasi_lie_presented(n, m);
        std::map<std::string, int> index;
        for (int i = 0; i < g.num_generators(); ++i) index[g.generator_name(i)] = i;
        auto coord = [&](const trees::RootedPtr& t) {
            auto it = index.find(trees::format_rooted(t));
            REQUIRE(it != index.end());
            return it->second;
        };
        for (auto& t : trees::enumerate_rooted(n - 1, m)) {
            auto e = rw.from_monomial(t);
            treelie::zlin::Vec v(g.num_generators(), 0);
            v[coord(t)] += 1;
            for (auto& [w, c] : e.lie) v[coord(standard_bracketing(w))] -= c;
            for (auto& u : e.torsion) {
                auto half = standard_bracketing(u);
                v[coord(trees::RootedTree::node(half, half))] -= 1;
            }
            CHECK(g.is_zero_element(v));
        }
    }
}

TEST_CASE("sq and projection assemble into the exact triple") {
    int k = 1, m = 2;
    auto z2 = z2_tensor_lie(k, m);
    auto lq = quasi_lie_presented(2 * k, m);
    auto l = lie_presented(2 * k, m);
    auto sq = sq_hom(z2, lq, k, m);
    auto pi = quasi_to_lie_hom(lq, l, 2 * k, m);
    auto csq = abelian::certify(sq);
    auto cpi = abelian::certify(pi);
    CHECK(csq.well_defined);
    CHECK(csq.injective);
    CHECK(cpi.well_defined);
    CHECK(cpi.surjective);
    CHECK(abelian::verify_exact({&sq, &pi}).exact());
}

TEST_CASE("free models: generator bookkeeping") {
    auto lf = lie_free_group(3, 2);
    CHECK(lf.num_generators() == 2);
    CHECK(lf.report().free_rank == 2);
    auto z2l = z2_tensor_lie(2, 2);
    auto r = z2l.report();
    CHECK(r.free_rank == 0);
    CHECK(r.torsion == std::vector<Int>{2});
    auto ot = one_tensor_lie(2, 2);
    CHECK(ot.num_generators() == 2 * 1);  // m * witt(2,2)
    CHECK(tensor_gen_name(1, "ab") == ot.generator_name(0));
}
