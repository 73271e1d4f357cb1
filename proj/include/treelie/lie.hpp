#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treelie/abelian.hpp"
#include "treelie/trees.hpp"

namespace treelie::lie {

using trees::RootedPtr;
using zlin::Int;

// rank of the degree-n part of the free Lie ring on m generators
long witt_rank(int n, int m);

bool is_lyndon(const std::string& w);
std::vector<std::string> lyndon_words(int n, int m);  // lexicographic order
std::pair<std::string, std::string> standard_factorization(const std::string& w);
RootedPtr standard_bracketing(const std::string& w);

// elements of the tensor algebra, word -> coefficient
using Tensor = std::map<std::string, Int>;
Tensor tensor_expand(const RootedPtr& monomial);
void tensor_axpy(Tensor& acc, const Tensor& t, const Int& c);
Tensor tensor_bracket(const Tensor& a, const Tensor& b);

// coordinates over standard bracketings of Lyndon words; nullopt when the
// element does not lie in the Lie subring
std::optional<std::map<std::string, Int>> to_basis(const Tensor& t);
std::map<std::string, Int> monomial_to_basis(const RootedPtr& monomial);

// presentations on planar bracket monomials: anti-symmetry + Jacobi relators
// together with all bracketings of lower-degree relators
abelian::PresentedAbelianGroup lie_presented(int n, int m,
                                             long cap = trees::kDefaultEnumerationCap);
abelian::PresentedAbelianGroup quasi_lie_presented(int n, int m,
                                                   long cap = trees::kDefaultEnumerationCap);

// free models over the Lyndon basis
abelian::PresentedAbelianGroup lie_free_group(int n, int m);
abelian::PresentedAbelianGroup z2_tensor_lie(int n, int m);
abelian::PresentedAbelianGroup one_tensor_lie(int q, int m);
std::string tensor_gen_name(int letter, const std::string& w);

abelian::GroupHom sq_hom(const abelian::PresentedAbelianGroup& dom,
                         const abelian::PresentedAbelianGroup& cod, int k, int m);
abelian::GroupHom quasi_to_lie_hom(const abelian::PresentedAbelianGroup& dom,
                                   const abelian::PresentedAbelianGroup& cod, int n, int m);

// normal form of a homogeneous quasi-Lie element: an integral part in Lyndon
// coordinates plus order-two coordinates indexed by half-degree Lyndon words
struct QuasiElement {
    std::map<std::string, Int> lie;
    std::set<std::string> torsion;

    bool zero() const { return lie.empty() && torsion.empty(); }
    bool operator==(const QuasiElement& o) const { return lie == o.lie && torsion == o.torsion; }
};

void qe_axpy(QuasiElement& acc, const QuasiElement& e, const Int& c);

class QuasiRewriter {
  public:
    QuasiElement from_word(const std::string& lyndon) const;
    QuasiElement from_lie(const std::map<std::string, Int>& coords) const;
    QuasiElement from_monomial(const RootedPtr& monomial);
    QuasiElement bracket(const QuasiElement& a, const QuasiElement& b);
    static QuasiElement negate(QuasiElement e);

  private:
    const QuasiElement& bracket_words(const std::string& u, const std::string& v);
    std::map<std::pair<std::string, std::string>, QuasiElement> memo_;
};

}  // namespace treelie::lie
