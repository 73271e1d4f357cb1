#include "doctest.h"
#include "treelie/abelian.hpp"

using namespace treelie::abelian;
using treelie::zlin::Int;
using treelie::zlin::Mat;
using treelie::zlin::Vec;

namespace {

PresentedAbelianGroup z_mod(const std::vector<long>& orders) {
    std::vector<std::string> names;
    std::vector<SparseRow> rels;
    for (size_t i = 0; i < orders.size(); ++i) {
        names.push_back("g" + std::to_string(i));
        if (orders[i] != 0) rels.push_back({{int(i), Int(orders[i])}});
    }
    return PresentedAbelianGroup(names, rels);
}

Mat from_rows(const std::vector<std::vector<long>>& rows) {
    int r = int(rows.size()), c = rows.empty() ? 0 : int(rows[0].size());
    Mat a(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) a.at(i, j) = rows[i][j];
    return a;
}

}  // namespace

TEST_CASE("report: free rank and invariant factors") {
    auto g = z_mod({0, 2, 0, 6});
    auto r = g.report();
    CHECK(r.free_rank == 2);
    CHECK(r.torsion == std::vector<Int>{2, 6});
    CHECK(r.generators == 4);

    // 2x2 block mixing two generators: <a,b | 2a+4b, 6a+8b> has det -8
    PresentedAbelianGroup h({"a", "b"}, {{{0, 2}, {1, 4}}, {{0, 6}, {1, 8}}});
    auto hr = h.report();
    CHECK(hr.free_rank == 0);
    CHECK(hr.torsion == std::vector<Int>{2, 4});
}

TEST_CASE("reduce: canonical representatives") {
    PresentedAbelianGroup g({"a", "b"}, {{{1, 3}}});  // Z + Z/3
    CHECK(g.is_zero_element(Vec{0, 3}));
    CHECK_FALSE(g.is_zero_element(Vec{0, 1}));
    CHECK_FALSE(g.is_zero_element(Vec{1, 0}));
    CHECK(g.equal_elements(Vec{2, 1}, Vec{2, 4}));
    CHECK_FALSE(g.equal_elements(Vec{2, 1}, Vec{3, 1}));
    Vec v{5, 7};
    CHECK(g.reduce(g.reduce(v)) == g.reduce(v));
}

TEST_CASE("component splitting matches one dense computation") {
    // two independent blocks plus a free generator, shuffled together
    PresentedAbelianGroup g({"a", "b", "c", "d", "e"},
                            {{{0, 2}, {3, 2}}, {{1, 5}}, {{0, 4}, {3, -2}}});
    auto r = g.report();
    // block {a,d}: relators (2,2),(4,-2) -> divisors 2,6 ; block {b}: Z/5 ; c,e free
    // chain-smoothed: Z/2 + Z/5 + Z/6 == Z/2 + Z/30
    CHECK(r.free_rank == 2);
    CHECK(r.torsion == std::vector<Int>{2, 30});
}

TEST_CASE("certify: multiplication by 2 on Z") {
    auto z = z_mod({0});
    GroupHom h{&z, &z, from_rows({{2}}), "times2"};
    auto cert = certify(h);
    CHECK(cert.well_defined);
    CHECK(cert.injective);
    CHECK_FALSE(cert.surjective);
    CHECK(cert.kernel.is_trivial());
    auto coker = cert.cokernel.report();
    CHECK(coker.free_rank == 0);
    CHECK(coker.torsion == std::vector<Int>{2});
}

TEST_CASE("certify: rejects maps that do not kill relators") {
    auto z2 = z_mod({2});
    auto z = z_mod({0});
    GroupHom bad{&z2, &z, from_rows({{1}}), "bad"};
    auto cert = certify(bad);
    CHECK_FALSE(cert.well_defined);
    REQUIRE(cert.offending_relator.has_value());
    CHECK(*cert.offending_relator == 0);

    GroupHom good{&z2, &z2, from_rows({{1}}), "id"};
    auto cert2 = certify(good);
    CHECK(cert2.well_defined);
    CHECK(cert2.injective);
    CHECK(cert2.surjective);
}

TEST_CASE("certify: projection Z -> Z/4 and its kernel") {
    auto z = z_mod({0});
    auto z4 = z_mod({4});
    GroupHom p{&z, &z4, from_rows({{1}}), "proj"};
    auto cert = certify(p);
    CHECK(cert.well_defined);
    CHECK(cert.surjective);
    CHECK_FALSE(cert.injective);
    auto ker = cert.kernel.report();
    CHECK(ker.free_rank == 1);  // 4Z
    CHECK(ker.torsion.empty());
}

TEST_CASE("verify_exact: 0 -> Z --2--> Z -> Z/2 -> 0") {
    auto z = z_mod({0});
    auto z2 = z_mod({2});
    GroupHom mul2{&z, &z, from_rows({{2}}), "times2"};
    GroupHom proj{&z, &z2, from_rows({{1}}), "proj"};
    auto rep = verify_exact({&mul2, &proj});
    CHECK(rep.well_defined);
    REQUIRE(rep.junctions.size() == 1);
    CHECK(rep.junctions[0].composes_to_zero);
    CHECK(rep.junctions[0].kernel_inside_image);
    CHECK(rep.exact());

    // break exactness: times 4 misses the kernel of proj
    GroupHom mul4{&z, &z, from_rows({{4}}), "times4"};
    auto bad = verify_exact({&mul4, &proj});
    CHECK_FALSE(bad.exact());
    REQUIRE(bad.junctions[0].witness.has_value());
    // witness: in ker(proj), not in im(times4)
    CHECK(z2.is_zero_element(apply_hom(proj, *bad.junctions[0].witness)));
}

TEST_CASE("apply_hom and preimage_of_zero_lattice") {
    auto z = z_mod({0, 0});
    auto z3 = z_mod({3});
    GroupHom h{&z, &z3, from_rows({{1}, {1}}), "sum"};
    // apply_hom reduces into the codomain's canonical representatives
    CHECK(z3.equal_elements(apply_hom(h, Vec{2, 5}), Vec{7}));
    CHECK(z3.is_zero_element(apply_hom(h, Vec{2, 4})));
    auto lat = preimage_of_zero_lattice(h);
    // kernel of Z^2 -> Z/3 is index 3: (1,-1) and (3,0) span it
    REQUIRE(lat.size() == 2);
    for (auto& v : lat) CHECK(z3.is_zero_element(apply_hom(h, v)));
}

TEST_CASE("invariant_factor_chain: gcd/lcm smoothing") {
    // the chain keeps the multiset size; units are filtered later by report()
    CHECK(invariant_factor_chain({2, 3}) == std::vector<Int>{1, 6});
    CHECK(invariant_factor_chain({2, 4}) == std::vector<Int>{2, 4});
    CHECK(invariant_factor_chain({2, 2, 3}) == std::vector<Int>{1, 2, 6});
    CHECK(invariant_factor_chain({4, 6}) == std::vector<Int>{2, 12});
    CHECK(invariant_factor_chain({}) == std::vector<Int>{});
}
