#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treelie/tree_groups.hpp"
#include "treelie/trees.hpp"

namespace treelie::nilpotent {

using zlin::Int;

// Freely reduced word in the free group on letters 1..m; entries are
// (letter, +-1). The identity is the empty word.
struct GroupWord {
    std::vector<std::pair<int, int>> letters;

    bool empty() const { return letters.empty(); }
    bool operator==(const GroupWord& o) const = default;
};

GroupWord word_gen(int letter, int exp = 1);
GroupWord word_mul(const GroupWord& a, const GroupWord& b);
GroupWord word_inv(const GroupWord& a);
GroupWord commutator(const GroupWord& a, const GroupWord& b);  // a b a^-1 b^-1

// Grammar: whitespace-separated tokens `x3`, `x3^-1`, `x3^2`. In symplectic
// mode `y` tokens are accepted as well, with x_i -> 2i-1 and y_i -> 2i.
GroupWord parse_word(const std::string& text, int m, bool symplectic = false);
std::string format_word(const GroupWord& w, bool symplectic = false);

// Truncated Magnus expansion: x_i -> 1 + X_i over noncommuting X's, monomials
// recorded as strings over 'a'.. and bucketed by degree up to the cutoff.
class MagnusSeries {
  public:
    MagnusSeries(int m, int cutoff);
    static MagnusSeries one(int m, int cutoff);

    int alphabet() const { return m_; }
    int cutoff() const { return n_; }
    const std::map<std::string, Int>& degree(int d) const { return deg_[d]; }
    std::map<std::string, Int>& degree(int d) { return deg_[d]; }

    // lowest positive degree with a nonzero coefficient; -1 when the series
    // is 1 + O(cutoff+1)
    int first_positive_degree() const;
    bool operator==(const MagnusSeries& o) const;

  private:
    int m_ = 0, n_ = 0;
    std::vector<std::map<std::string, Int>> deg_;
};

MagnusSeries series_mul(const MagnusSeries& a, const MagnusSeries& b);
MagnusSeries magnus(const GroupWord& w, int m, int cutoff);

// Lower central series degree with the leading Lie class in Lyndon
// coordinates. `exceeded` is set when the word is trivial modulo F_{cap+1}.
struct LcsClass {
    int degree = 0;
    bool exceeded = false;
    std::map<std::string, Int> leading;
};

LcsClass lcs_degree(const GroupWord& w, int m, int cap);

inline constexpr int kMagnusHardCap = 8;

// Conjugation data x_i -> l_i x_i l_i^-1 on the free group modulo F_{n+2};
// `valid` certifies that the product x_1...x_m is fixed at that class.
struct ArtinAutomorphism {
    int m = 0;
    int cls = 0;  // the n above
    std::vector<GroupWord> longitudes;
    bool valid = false;
    std::string violation;
};

ArtinAutomorphism artin(const std::vector<GroupWord>& longitudes, int n, int m);

// Largest j <= cap such that the automorphism is the identity on F/F_{j+2}.
int johnson_order(const ArtinAutomorphism& a, int cap);

struct MilnorInvariant {
    int degree = 0;  // the tensor lives in L_1 (x) L_degree
    bool exceeded = false;
    tree_groups::TensorElement tensor;
    bool in_bracket_kernel = false;
};

// First nonvanishing Milnor class: sum of x_i (x) (leading class of l_i) over
// the strands realizing the minimal degree, scanned up to cls+1.
MilnorInvariant milnor_first_nonvanishing(const ArtinAutomorphism& a);

struct SymplecticDElement {
    int k = 0;  // images agree with the identity modulo F_{k+1}
    bool identity = false;
    tree_groups::TensorElement tensor;
    bool in_bracket_kernel = false;
};

// Johnson-type element of an endomorphism of the free group on x1,y1,..,xg,yg
// given by `images` in letter order: sum_i x_i (x) psi(y_i) - y_i (x) psi(x_i)
// where psi(z) is the leading class of z^-1 f(z).
SymplecticDElement symplectic_d_element(const std::vector<GroupWord>& images, int genus,
                                        int cap = kMagnusHardCap);

struct ClasperEvaluation {
    bool twisted = false;
    int sign = 1;            // gamma = sign * commutator_word in the stated class
    GroupWord commutator_word;
    int weight = 0;          // gamma lives in G_weight / G_{weight+1}
    LcsClass cls;            // of commutator_word
};

// Iterated commutator read off a rooted tree whose strand leaves index into
// `alpha`; sign (-1)^(order-1), class = leaf count of the shape.
ClasperEvaluation clasper_commutator(const trees::RootedPtr& shape,
                                     const std::vector<GroupWord>& alpha, int m,
                                     int cap = kMagnusHardCap);

// Twisted variant: the infinity tree is rooted at the linked leaf, the
// infinity-rooted commutator is substituted for the infinity symbol, sign +1,
// class 2*order+1.
ClasperEvaluation clasper_commutator_twisted(const trees::UnitrivalentTree& t, int linked_leaf,
                                             const std::vector<GroupWord>& alpha, int m,
                                             int cap = kMagnusHardCap);

}  // namespace treelie::nilpotent
