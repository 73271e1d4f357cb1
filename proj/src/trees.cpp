#include "treelie/trees.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <set>

namespace treelie::trees {

int Label::letter() const {
    switch (kind) {
        case LabelKind::Strand: return index;
        case LabelKind::SympX: return 2 * index - 1;
        case LabelKind::SympY: return 2 * index;
        case LabelKind::Infinity: break;
    }
    throw std::logic_error("infinity has no letter value");
}

char Label::key_char() const {
    if (is_infinity()) return '~';
    int l = letter();
    if (l < 1 || l > 26) throw std::invalid_argument("label letter out of range");
    return char('a' + l - 1);
}

std::string Label::token() const {
    switch (kind) {
        case LabelKind::Strand: return std::to_string(index);
        case LabelKind::SympX: return "x" + std::to_string(index);
        case LabelKind::SympY: return "y" + std::to_string(index);
        case LabelKind::Infinity: return "inf";
    }
    return "?";
}

Label strand(int i) { return Label{LabelKind::Strand, i}; }
Label symp_x(int i) { return Label{LabelKind::SympX, i}; }
Label symp_y(int i) { return Label{LabelKind::SympY, i}; }
Label infinity_label() { return Label{LabelKind::Infinity, 0}; }

bool label_less(const Label& a, const Label& b) {
    bool ia = a.is_infinity(), ib = b.is_infinity();
    if (ia != ib) return ib;  // infinity sorts last
    if (ia) return false;
    if (a.letter() != b.letter()) return a.letter() < b.letter();
    return int(a.kind) < int(b.kind);
}

RootedPtr RootedTree::leaf(Label l) {
    auto t = std::shared_ptr<RootedTree>(new RootedTree());
    t->label_ = l;
    t->order_ = 0;
    t->has_inf_ = l.is_infinity();
    t->enc_ = std::string(1, l.key_char());
    return t;
}

RootedPtr RootedTree::node(RootedPtr l, RootedPtr r) {
    assert(l && r);
    auto t = std::shared_ptr<RootedTree>(new RootedTree());
    t->order_ = l->order_ + r->order_ + 1;
    t->has_inf_ = l->has_inf_ || r->has_inf_;
    t->enc_ = "(" + l->enc_ + r->enc_ + ")";
    t->left_ = std::move(l);
    t->right_ = std::move(r);
    return t;
}

std::vector<Label> RootedTree::leaves() const {
    std::vector<Label> out;
    auto walk = [&](auto&& self, const RootedTree* t) -> void {
        if (t->is_leaf()) {
            out.push_back(t->label());
            return;
        }
        self(self, t->left().get());
        self(self, t->right().get());
    };
    walk(walk, this);
    return out;
}

std::string format_rooted(const RootedPtr& t) {
    if (t->is_leaf()) return t->label().token();
    return "(" + format_rooted(t->left()) + "," + format_rooted(t->right()) + ")";
}

UnitrivalentTree UnitrivalentTree::bar(Label a, Label b) {
    UnitrivalentTree t;
    t.is_bar_ = true;
    t.a_ = a;
    t.b_ = b;
    return t;
}

UnitrivalentTree UnitrivalentTree::star(RootedPtr b1, RootedPtr b2, RootedPtr b3) {
    UnitrivalentTree t;
    t.is_bar_ = false;
    t.br_[0] = std::move(b1);
    t.br_[1] = std::move(b2);
    t.br_[2] = std::move(b3);
    return t;
}

int UnitrivalentTree::order() const {
    if (is_bar_) return 0;
    return 1 + br_[0]->order() + br_[1]->order() + br_[2]->order();
}

std::vector<Label> UnitrivalentTree::leaves() const {
    if (is_bar_) return {a_, b_};
    std::vector<Label> out;
    for (int i = 0; i < 3; ++i) {
        auto ls = br_[i]->leaves();
        out.insert(out.end(), ls.begin(), ls.end());
    }
    return out;
}

int UnitrivalentTree::infinity_count() const {
    int n = 0;
    for (auto& l : leaves())
        if (l.is_infinity()) ++n;
    return n;
}

std::string UnitrivalentTree::planar_enc() const {
    if (is_bar_) return std::string("-") + a_.key_char() + b_.key_char();
    return "<" + br_[0]->enc() + br_[1]->enc() + br_[2]->enc() + ">";
}

std::string format_unitrivalent(const UnitrivalentTree& t) {
    if (t.is_bar()) return t.bar_a().token() + "-" + t.bar_b().token();
    return "<" + format_rooted(t.branch(0)) + "," + format_rooted(t.branch(1)) + "," +
           format_rooted(t.branch(2)) + ">";
}

namespace {

RootedPtr reroot(const RootedPtr& br, int idx, RootedPtr ctx) {
    if (br->is_leaf()) return ctx;
    int nl = br->left()->leaf_count();
    if (idx < nl)
        return reroot(br->left(), idx, RootedTree::node(br->right(), std::move(ctx)));
    return reroot(br->right(), idx - nl, RootedTree::node(std::move(ctx), br->left()));
}

}  // namespace

RootedPtr root_at(const UnitrivalentTree& t, int leaf_index) {
    if (t.is_bar()) {
        if (leaf_index == 0) return RootedTree::leaf(t.bar_b());
        if (leaf_index == 1) return RootedTree::leaf(t.bar_a());
        throw std::out_of_range("leaf index");
    }
    int n0 = t.branch(0)->leaf_count();
    int n1 = t.branch(1)->leaf_count();
    int n2 = t.branch(2)->leaf_count();
    if (leaf_index < 0 || leaf_index >= n0 + n1 + n2) throw std::out_of_range("leaf index");
    if (leaf_index < n0)
        return reroot(t.branch(0), leaf_index, RootedTree::node(t.branch(1), t.branch(2)));
    if (leaf_index < n0 + n1)
        return reroot(t.branch(1), leaf_index - n0, RootedTree::node(t.branch(2), t.branch(0)));
    return reroot(t.branch(2), leaf_index - n0 - n1, RootedTree::node(t.branch(0), t.branch(1)));
}

UnitrivalentTree graft(const RootedPtr& j, const RootedPtr& k) {
    if (j->is_leaf() && k->is_leaf()) return UnitrivalentTree::bar(j->label(), k->label());
    if (!j->is_leaf()) return UnitrivalentTree::star(k, j->left(), j->right());
    return UnitrivalentTree::star(j, k->left(), k->right());
}

UnitrivalentTree cap_infty(const RootedPtr& j) {
    if (j->order() < 1)
        throw std::invalid_argument("cap_infty needs a tree with a trivalent vertex");
    if (j->contains_infinity()) throw std::invalid_argument("tree already carries infinity");
    return graft(RootedTree::leaf(infinity_label()), j);
}

namespace {

struct CanonRooted {
    RootedPtr tree;
    int sign = 1;
    bool symmetric = false;
};

CanonRooted canon_rooted(const RootedPtr& t) {
    if (t->is_leaf()) return {t, 1, false};
    CanonRooted l = canon_rooted(t->left());
    CanonRooted r = canon_rooted(t->right());
    int sign = l.sign * r.sign;
    bool sym = l.symmetric || r.symmetric;
    if (l.tree->enc() == r.tree->enc())
        return {RootedTree::node(l.tree, r.tree), sign, true};
    if (l.tree->enc() < r.tree->enc())
        return {RootedTree::node(l.tree, r.tree), sign, sym};
    return {RootedTree::node(r.tree, l.tree), -sign, sym};
}

std::string pad2(int n) {
    std::string s = std::to_string(n);
    return s.size() < 2 ? "0" + s : s;
}

}  // namespace

CanonicalForm canonicalize(const UnitrivalentTree& t) {
    auto labels = t.leaves();
    const int nl = int(labels.size());

    struct Entry {
        std::string e;
        int sign;
        bool sym;
        RootedPtr canon;
        Label lbl;
    };
    std::vector<Entry> entries;
    entries.reserve(nl);
    for (int v = 0; v < nl; ++v) {
        CanonRooted cr = canon_rooted(root_at(t, v));
        std::string e = std::string(1, labels[v].key_char()) + "|" + cr.tree->enc();
        entries.push_back({std::move(e), cr.sign, cr.symmetric, cr.tree, labels[v]});
    }

    // any rooted self-symmetry, or two rootings reaching the same encoding
    // with opposite signs, witnesses an orientation-reversing automorphism
    bool symmetric = false;
    std::map<std::string, std::pair<bool, bool>> seen_signs;  // enc -> (saw +, saw -)
    for (auto& en : entries) {
        if (en.sym) symmetric = true;
        auto& p = seen_signs[en.e];
        (en.sign > 0 ? p.first : p.second) = true;
        if (p.first && p.second) symmetric = true;
    }

    const Entry* best = &entries[0];
    for (auto& en : entries)
        if (en.e < best->e) best = &en;

    CanonicalForm cf;
    cf.order = t.order();
    cf.sign = symmetric ? 1 : best->sign;
    cf.symmetric = symmetric;
    cf.tree = graft(RootedTree::leaf(best->lbl), best->canon);

    std::string sorted_chars;
    for (auto& l : labels) sorted_chars += l.key_char();
    std::sort(sorted_chars.begin(), sorted_chars.end());
    cf.key = pad2(cf.order) + "#" + sorted_chars + "#" + best->e;
    return cf;
}

namespace {

long catalan(int n) {
    long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void gen_labeled(int nleaves, int m, std::vector<RootedPtr>& out) {
    if (nleaves == 1) {
        for (int i = 1; i <= m; ++i) out.push_back(RootedTree::leaf(strand(i)));
        return;
    }
    for (int k = 1; k < nleaves; ++k) {
        std::vector<RootedPtr> ls, rs;
        gen_labeled(k, m, ls);
        gen_labeled(nleaves - k, m, rs);
        for (auto& l : ls)
            for (auto& r : rs) out.push_back(RootedTree::node(l, r));
    }
}

std::vector<CanonicalForm> enumerate_impl(int n, int m, long cap, bool parallel, bool infty) {
    if (n < 0 || m < 1) throw std::invalid_argument("bad enumeration parameters");
    if (infty && n == 0) return {};  // an order-0 tree has no trivalent vertex for the cap
    if (n > 14 || m > 26)
        throw EnumerationCap("enumeration parameters out of supported range");
    long branches = catalan(n) * ipow(m, n + 1);
    long roots = infty ? 1 : m;
    if (branches * roots > cap)
        throw EnumerationCap("enumeration exceeds candidate cap of " + std::to_string(cap));

    std::vector<RootedPtr> rooted;
    gen_labeled(n + 1, m, rooted);
    std::vector<Label> root_labels;
    if (infty)
        root_labels.push_back(infinity_label());
    else
        for (int i = 1; i <= m; ++i) root_labels.push_back(strand(i));

    const long total = long(rooted.size()) * long(root_labels.size());
    std::vector<CanonicalForm> found(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel && total > 256)
#endif
    for (long idx = 0; idx < total; ++idx) {
        const auto& r = rooted[idx % rooted.size()];
        const auto& rl = root_labels[idx / rooted.size()];
        found[idx] = canonicalize(graft(RootedTree::leaf(rl), r));
    }

    std::sort(found.begin(), found.end(),
              [](const CanonicalForm& a, const CanonicalForm& b) { return a.key < b.key; });
    std::vector<CanonicalForm> out;
    for (auto& cf : found)
        if (out.empty() || out.back().key != cf.key) out.push_back(std::move(cf));
    // the stored tree is the canonical representative, so its sign is +1; the
    // candidate-relative sign would otherwise depend on sweep order
    for (auto& cf : out) cf.sign = 1;
    return out;
}

}  // namespace

std::vector<CanonicalForm> enumerate_trees(int n, int m, long cap, bool parallel) {
    return enumerate_impl(n, m, cap, parallel, false);
}

std::vector<CanonicalForm> enumerate_infty_trees(int n, int m, long cap, bool parallel) {
    return enumerate_impl(n, m, cap, parallel, true);
}

std::vector<RootedPtr> enumerate_rooted(int order, int m, long cap) {
    if (order < 0 || m < 1) throw std::invalid_argument("bad enumeration parameters");
    if (order > 14 || m > 26)
        throw EnumerationCap("enumeration parameters out of supported range");
    if (catalan(order) * ipow(m, order + 1) > cap)
        throw EnumerationCap("rooted enumeration exceeds cap of " + std::to_string(cap));
    std::vector<RootedPtr> out;
    gen_labeled(order + 1, m, out);
    std::sort(out.begin(), out.end(),
              [](const RootedPtr& a, const RootedPtr& b) { return a->enc() < b->enc(); });
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;
    int max_strand;
    bool allow_inf;
    int strand_seen = 0, symp_seen = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + msg);
    }

    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    Label label() {
        ws();
        if (i + 2 < s.size() && s.compare(i, 3, "inf") == 0) {
            i += 3;
            if (!allow_inf) fail("infinity label not allowed here");
            return infinity_label();
        }
        LabelKind kind = LabelKind::Strand;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'y')) {
            kind = s[i] == 'x' ? LabelKind::SympX : LabelKind::SympY;
            ++i;
        }
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) fail("expected a label");
        int idx = std::stoi(s.substr(start, i - start));
        Label l{kind, idx};
        if (kind == LabelKind::Strand) strand_seen++;
        else symp_seen++;
        if (strand_seen && symp_seen) fail("mixing strand and symplectic labels");
        if (idx < 1 || l.letter() > max_strand) fail("label out of range");
        return l;
    }

    RootedPtr rooted() {
        ws();
        if (eat('(')) {
            RootedPtr l = rooted();
            expect(',');
            RootedPtr r = rooted();
            expect(')');
            return RootedTree::node(std::move(l), std::move(r));
        }
        return RootedTree::leaf(label());
    }

    UnitrivalentTree unitrivalent() {
        ws();
        if (eat('<')) {
            RootedPtr b1 = rooted();
            expect(',');
            RootedPtr b2 = rooted();
            expect(',');
            RootedPtr b3 = rooted();
            expect('>');
            return UnitrivalentTree::star(std::move(b1), std::move(b2), std::move(b3));
        }
        Label a = label();
        expect('-');
        Label b = label();
        return UnitrivalentTree::bar(a, b);
    }

    void end() {
        ws();
        if (i != s.size()) fail("trailing input");
    }
};

}  // namespace

RootedPtr parse_rooted(const std::string& text, int max_strand, bool allow_infinity) {
    Parser p{text, 0, max_strand, allow_infinity};
    RootedPtr t = p.rooted();
    p.end();
    return t;
}

UnitrivalentTree parse_unitrivalent(const std::string& text, int max_strand,
                                    bool allow_infinity) {
    Parser p{text, 0, max_strand, allow_infinity};
    UnitrivalentTree t = p.unitrivalent();
    p.end();
    if (t.infinity_count() > 1) throw std::invalid_argument("more than one infinity leaf");
    return t;
}

}  // namespace treelie::trees
