#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelie/abelian.hpp"
#include "treelie/lie.hpp"
#include "treelie/trees.hpp"

namespace treelie::tree_groups {

using trees::CanonicalForm;
using trees::RootedPtr;
using trees::UnitrivalentTree;
using zlin::Int;
using zlin::Vec;

enum class TreeKind { T, TTildeQuotient, TTildeInfty };

// A tree group together with its generator bookkeeping. Elements are vectors
// over `gens` (a TreeSum); for the infinity presentation the ordinary
// generators come first, followed by the infinity-tree generators.
struct TreeGroup {
    TreeKind kind = TreeKind::T;
    int order = 0;
    int labels = 0;
    std::vector<CanonicalForm> gens;
    int ordinary_count = 0;
    abelian::PresentedAbelianGroup group;
    std::map<std::string, int> index;  // canonical key -> generator position

    Vec zero() const { return Vec(gens.size(), 0); }
};

struct TTildeOptions {
    bool include_2Jinfty = false;
    bool include_boundary_twist = true;  // disabled only by the negative control
};

TreeGroup tree_group(int n, int m, long cap = trees::kDefaultEnumerationCap,
                     bool parallel = true);
TreeGroup reduced_tree_group_quotient(int n, int m, long cap = trees::kDefaultEnumerationCap,
                                      bool parallel = true);
TreeGroup reduced_tree_group_presented(int n, int m, TTildeOptions opts = {},
                                       long cap = trees::kDefaultEnumerationCap,
                                       bool parallel = true);

// Coordinates of a tree in a group's generator basis (canonical sign applied).
Vec tree_coords(const TreeGroup& g, const UnitrivalentTree& t);

// Delta(t) as an element of the codomain tree group of order 2*order(t)+1.
Vec delta(const TreeGroup& target, const UnitrivalentTree& t);

// The framing map as a certified homomorphism Z2 (x) T_{n-1} -> T_{2n-1};
// `dom_gens` receives the generator list of the domain.
abelian::GroupHom delta_hom(const abelian::PresentedAbelianGroup& dom,
                            const TreeGroup& cod, const std::vector<CanonicalForm>& dom_gens);
abelian::PresentedAbelianGroup z2_tree_group(const TreeGroup& t);

// An element of L_1 (x) L_q in (letter, Lyndon word) coordinates.
struct TensorElement {
    int q = 0;
    std::map<std::pair<int, std::string>, Int> terms;

    bool zero() const { return terms.empty(); }
    bool operator==(const TensorElement& o) const { return q == o.q && terms == o.terms; }
};

void tensor_elem_axpy(TensorElement& acc, const TensorElement& e, const Int& c);
Vec tensor_to_vec(const TensorElement& e, int m);  // over one_tensor_lie(q, m) generators

TensorElement eta(const UnitrivalentTree& t, int m);
TensorElement half_eta_doubled(const RootedPtr& j, int m);  // (1/2) eta(graft(j, j))

// Bracket of a tensor element into degree q+1, Lie and quasi-Lie versions.
std::map<std::string, Int> bracket_map(const TensorElement& e);
lie::QuasiElement bracket_map_quasi(const TensorElement& e);

// Kernel of the (quasi-)bracket map out of L_1 (x) L_{n+1}.
struct DGroup {
    int order = 0;
    int m = 0;
    bool quasi = false;
    abelian::PresentedAbelianGroup domain;  // L_1 (x) L'(or L)_{n+1}
    abelian::PresentedAbelianGroup group;   // the kernel, presented
    zlin::Mat basis;                        // kernel lattice basis over domain generators
    zlin::SmithForm basis_t_snf;            // smith(basis transposed), for coordinate solves
};

DGroup d_group(int n, int m);
DGroup d_group_quasi(int n, int m);

// Coordinates of e in the kernel basis; nullopt when e is not in the kernel lattice.
std::optional<Vec> d_coords(const DGroup& d, const TensorElement& e);

struct EtaHom {
    bool images_in_codomain = false;
    std::string failure;
    abelian::GroupHom hom;
};

// eta as a homomorphism T_2k -> D'_2k (the even-order comparison map).
EtaHom eta_hom(const TreeGroup& t, const DGroup& d);

// Snake connecting map on D_{2n} elements: lift to the quasi-Lie tensor, apply
// the quasi bracket, read off the square part. Result lives in Z2 (x) L_{n+1},
// returned as 0/1 coordinates over Lyndon words.
std::map<std::string, Int> sl_map(const TensorElement& d);

struct CompareReport {
    bool forward_well_defined = false;   // presented -> quotient
    bool backward_well_defined = false;  // quotient -> presented
    bool mutual_inverse = false;
    bool structures_equal = false;
    bool with_2Jinfty = false;
    abelian::GroupReport quotient, presented;
    std::string detail;

    bool iso() const {
        return forward_well_defined && backward_well_defined && mutual_inverse &&
               structures_equal;
    }
};

CompareReport compare_presentations(int n, int m, TTildeOptions opts = {},
                                    long cap = trees::kDefaultEnumerationCap);

struct TopSequenceReport {
    bool left_well_defined = false;
    bool right_well_defined = false;
    bool left_injective = false;
    bool right_surjective = false;
    bool exact_middle = false;
    abelian::GroupReport left, middle, right;
    std::string detail;

    bool pass() const {
        return left_well_defined && right_well_defined && left_injective &&
               right_surjective && exact_middle;
    }
};

// The sequence Z2 (x) L_{2k+1} >-> Ttilde_{4k-1} ->> D_{4k-1}, built on the
// quotient model of Ttilde, certified exact.
TopSequenceReport verify_top_sequence(int n, int m);

}  // namespace treelie::tree_groups
