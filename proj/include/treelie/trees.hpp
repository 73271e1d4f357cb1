#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace treelie::trees {

// Leaf labels: strand indices 1..m, symplectic letters x1,y1,...,xg,yg, or the
// special infinity marker. Symplectic letters map to 1..2g internally
// (x_i -> 2i-1, y_i -> 2i) so both alphabets share one letter ordering.
enum class LabelKind { Strand, SympX, SympY, Infinity };

struct Label {
    LabelKind kind = LabelKind::Strand;
    int index = 1;  // 1-based; unused for Infinity

    bool is_infinity() const { return kind == LabelKind::Infinity; }
    int letter() const;         // 1-based letter value; throws on infinity
    char key_char() const;      // single char used inside canonical keys
    std::string token() const;  // display/grammar token
    bool operator==(const Label& o) const = default;
};

Label strand(int i);
Label symp_x(int i);
Label symp_y(int i);
Label infinity_label();

bool label_less(const Label& a, const Label& b);

// Immutable rooted binary tree. The literal encoding `enc` records the planar
// structure (children in written order) and doubles as the grammar rendering
// over key chars.
class RootedTree;
using RootedPtr = std::shared_ptr<const RootedTree>;

class RootedTree {
  public:
    static RootedPtr leaf(Label l);
    static RootedPtr node(RootedPtr l, RootedPtr r);

    bool is_leaf() const { return !left_; }
    const Label& label() const { return label_; }
    const RootedPtr& left() const { return left_; }
    const RootedPtr& right() const { return right_; }
    int order() const { return order_; }            // number of internal nodes
    int leaf_count() const { return order_ + 1; }
    const std::string& enc() const { return enc_; }  // planar encoding, key chars

    std::vector<Label> leaves() const;
    bool contains_infinity() const { return has_inf_; }

  private:
    RootedTree() = default;
    Label label_;
    RootedPtr left_, right_;
    int order_ = 0;
    bool has_inf_ = false;
    std::string enc_;
};

std::string format_rooted(const RootedPtr& t);  // display grammar
RootedPtr parse_rooted(const std::string& text, int max_strand, bool allow_infinity = false);

// Unitrivalent tree with cyclic orientations: either a bar (order 0, two
// labeled leaves joined by an edge) or a star presentation, one trivalent
// vertex carrying three rooted branches in cyclic order.
class UnitrivalentTree {
  public:
    static UnitrivalentTree bar(Label a, Label b);
    static UnitrivalentTree star(RootedPtr b1, RootedPtr b2, RootedPtr b3);

    bool is_bar() const { return is_bar_; }
    const Label& bar_a() const { return a_; }
    const Label& bar_b() const { return b_; }
    const RootedPtr& branch(int i) const { return br_[i]; }

    int order() const;
    int leaf_count() const { return order() + 2; }
    std::vector<Label> leaves() const;  // traversal order, used by root_at
    int infinity_count() const;
    std::string planar_enc() const;

    bool operator==(const UnitrivalentTree& o) const { return planar_enc() == o.planar_enc(); }

  private:
    bool is_bar_ = true;
    Label a_, b_;
    RootedPtr br_[3];
};

std::string format_unitrivalent(const UnitrivalentTree& t);
UnitrivalentTree parse_unitrivalent(const std::string& text, int max_strand,
                                    bool allow_infinity = false);

// Remove leaf v and read the rest as a rooted tree: at every trivalent vertex
// children are taken in cyclic order after the incoming edge.
RootedPtr root_at(const UnitrivalentTree& t, int leaf_index);

// Join the roots of two rooted trees by a new edge.
UnitrivalentTree graft(const RootedPtr& j, const RootedPtr& k);

// Attach an infinity leaf at the root of j (j of order >= 1, no infinity inside).
UnitrivalentTree cap_infty(const RootedPtr& j);

struct CanonicalForm {
    UnitrivalentTree tree;  // canonical embedding
    std::string key;        // total order: order # sorted labels # minimal encoding
    int sign = 1;           // relates the input embedding to the canonical one
    bool symmetric = false; // admits an orientation-reversing self-isomorphism
    int order = 0;
};

// Deterministic representative of the oriented-isomorphism class. Idempotent:
// canonicalizing the stored representative yields sign +1. Symmetric trees are
// normalized to sign +1 (both signs reach the representative).
CanonicalForm canonicalize(const UnitrivalentTree& t);

struct EnumerationCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr long kDefaultEnumerationCap = 200000;

// All canonical order-n trees labeled from 1..m, strictly increasing in the
// canonical key order. `parallel` switches the OpenMP candidate sweep; results
// are identical either way.
std::vector<CanonicalForm> enumerate_trees(int n, int m, long cap = kDefaultEnumerationCap,
                                           bool parallel = true);

// Same with exactly one infinity leaf; empty at order 0.
std::vector<CanonicalForm> enumerate_infty_trees(int n, int m,
                                                 long cap = kDefaultEnumerationCap,
                                                 bool parallel = true);

// All planar rooted binary trees of the given order over strand labels 1..m,
// ordered by encoding. These enumerate bracket monomials.
std::vector<RootedPtr> enumerate_rooted(int order, int m, long cap = kDefaultEnumerationCap);

}  // namespace treelie::trees
