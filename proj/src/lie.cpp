#include "treelie/lie.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace treelie::lie {

namespace {

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int moebius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

long witt_rank(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("witt_rank needs n, m >= 1");
    long acc = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) acc += moebius(d) * ipow(m, n / d);
    return acc / n;
}

bool is_lyndon(const std::string& w) {
    if (w.empty()) return false;
    const int n = int(w.size());
    for (int s = 1; s < n; ++s) {
        // compare w against its rotation starting at s
        for (int i = 0; i < n; ++i) {
            char a = w[i], b = w[(s + i) % n];
            if (a != b) {
                if (a > b) return false;
                break;
            }
            if (i == n - 1) return false;  // a nontrivial rotation equals w
        }
    }
    return true;
}

std::vector<std::string> lyndon_words(int n, int m) {
    // Duval's generation of Lyndon words of length <= n, filtered to length n
    std::vector<std::string> out;
    std::string w = "a";
    const char last = char('a' + m - 1);
    while (true) {
        if (int(w.size()) == n) out.push_back(w);
        // extend periodically to length n, then increment
        std::string t = w;
        while (int(t.size()) < n) t += t[t.size() % w.size()];
        while (!t.empty() && t.back() == last) t.pop_back();
        if (t.empty()) break;
        t.back()++;
        w = t;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::string, std::string> standard_factorization(const std::string& w) {
    assert(w.size() >= 2);
    for (size_t s = 1; s < w.size(); ++s) {
        std::string suf = w.substr(s);
        if (is_lyndon(suf)) return {w.substr(0, s), suf};
    }
    throw std::logic_error("no Lyndon suffix in " + w);
}

RootedPtr standard_bracketing(const std::string& w) {
    if (!is_lyndon(w)) throw std::invalid_argument("not a Lyndon word: " + w);
    if (w.size() == 1) return trees::RootedTree::leaf(trees::strand(w[0] - 'a' + 1));
    auto [u, v] = standard_factorization(w);
    return trees::RootedTree::node(standard_bracketing(u), standard_bracketing(v));
}

namespace {

void monomial_word(const RootedPtr& t, std::string& out) {
    if (t->is_leaf()) {
        if (t->label().is_infinity())
            throw std::invalid_argument("monomial may not carry infinity");
        out += t->label().key_char();
        return;
    }
    monomial_word(t->left(), out);
    monomial_word(t->right(), out);
}

}  // namespace

Tensor tensor_expand(const RootedPtr& monomial) {
    if (monomial->is_leaf()) {
        std::string w;
        monomial_word(monomial, w);
        return {{w, 1}};
    }
    return tensor_bracket(tensor_expand(monomial->left()), tensor_expand(monomial->right()));
}

void tensor_axpy(Tensor& acc, const Tensor& t, const Int& c) {
    if (c == 0) return;
    for (auto& [w, x] : t) {
        Int& slot = acc[w];
        slot += x * c;
        if (slot == 0) acc.erase(w);
    }
}

Tensor tensor_bracket(const Tensor& a, const Tensor& b) {
    Tensor out;
    for (auto& [wa, ca] : a)
        for (auto& [wb, cb] : b) {
            Int c = ca * cb;
            Int& fwd = out[wa + wb];
            fwd += c;
            if (fwd == 0) out.erase(wa + wb);
            Int& bwd = out[wb + wa];
            bwd -= c;
            if (bwd == 0) out.erase(wb + wa);
        }
    return out;
}

std::optional<std::map<std::string, Int>> to_basis(const Tensor& t) {
    Tensor rem = t;
    std::map<std::string, Int> coords;
    while (!rem.empty()) {
        const auto& [w, c] = *rem.begin();
        if (!is_lyndon(w)) return std::nullopt;
        // the expansion of the standard bracketing of w is w plus larger words,
        // so subtracting strips the leading term
        coords[w] += c;
        tensor_axpy(rem, tensor_expand(standard_bracketing(w)), -c);
    }
    for (auto it = coords.begin(); it != coords.end();)
        it = it->second == 0 ? coords.erase(it) : std::next(it);
    return coords;
}

std::map<std::string, Int> monomial_to_basis(const RootedPtr& monomial) {
    auto coords = to_basis(tensor_expand(monomial));
    if (!coords) throw std::logic_error("monomial expansion left the Lie subring");
    return *coords;
}

namespace {

using SparseRow = abelian::SparseRow;

struct PresentationBuilder {
    int m;
    bool quasi;
    long cap;
    // monomials per degree and index-by-encoding lookups
    std::vector<std::vector<RootedPtr>> mon;
    std::vector<std::map<std::string, int>> idx;
    std::vector<std::vector<std::map<int, Int>>> rows;  // ideal rows per degree

    explicit PresentationBuilder(int n, int m_, bool quasi_, long cap_)
        : m(m_), quasi(quasi_), cap(cap_) {
        mon.resize(n + 1);
        idx.resize(n + 1);
        rows.resize(n + 1);
        for (int d = 1; d <= n; ++d) {
            mon[d] = trees::enumerate_rooted(d - 1, m, cap);
            for (int i = 0; i < int(mon[d].size()); ++i) idx[d][mon[d][i]->enc()] = i;
        }
        for (int d = 2; d <= n; ++d) build_degree(d);
    }

    int index_of(int d, const RootedPtr& t) const { return idx[d].at(t->enc()); }

    void add_row(int d, std::map<int, Int> r) {
        for (auto it = r.begin(); it != r.end();)
            it = it->second == 0 ? r.erase(it) : std::next(it);
        if (!r.empty()) rows[d].push_back(std::move(r));
    }

    void build_degree(int d) {
        using trees::RootedTree;
        // anti-symmetry
        for (int i = 1; 2 * i <= d; ++i) {
            int j = d - i;
            for (auto& p : mon[i])
                for (auto& q : mon[j]) {
                    if (i == j && q->enc() < p->enc()) continue;
                    std::map<int, Int> r;
                    r[index_of(d, RootedTree::node(p, q))] += 1;
                    r[index_of(d, RootedTree::node(q, p))] += 1;
                    if (i == j && p->enc() == q->enc() && !quasi) {
                        // alternativity: the square itself dies
                        std::map<int, Int> sq;
                        sq[index_of(d, RootedTree::node(p, p))] = 1;
                        add_row(d, std::move(sq));
                    }
                    add_row(d, std::move(r));
                }
        }
        // Jacobi
        for (int i = 1; i <= d - 2; ++i)
            for (int j = 1; i + j < d; ++j) {
                int k = d - i - j;
                for (auto& x : mon[i])
                    for (auto& y : mon[j])
                        for (auto& z : mon[k]) {
                            std::map<int, Int> r;
                            r[index_of(d, RootedTree::node(x, RootedTree::node(y, z)))] += 1;
                            r[index_of(d, RootedTree::node(RootedTree::node(x, y), z))] -= 1;
                            r[index_of(d, RootedTree::node(y, RootedTree::node(x, z)))] -= 1;
                            add_row(d, std::move(r));
                        }
            }
        // brackets of lower-degree relators with arbitrary monomials
        for (int e = 2; e < d; ++e)
            for (auto& row : rows[e])
                for (auto& w : mon[d - e]) {
                    std::map<int, Int> left, right;
                    for (auto& [gi, c] : row) {
                        left[index_of(d, RootedTree::node(mon[e][gi], w))] += c;
                        right[index_of(d, RootedTree::node(w, mon[e][gi]))] += c;
                    }
                    add_row(d, std::move(left));
                    add_row(d, std::move(right));
                }
    }

    abelian::PresentedAbelianGroup group(int n, const std::string& name) const {
        std::vector<std::string> names;
        names.reserve(mon[n].size());
        for (auto& t : mon[n]) names.push_back(trees::format_rooted(t));
        std::set<SparseRow> dedup;
        for (auto& row : rows[n]) {
            SparseRow r(row.begin(), row.end());
            if (r.front().second < 0)
                for (auto& [i, c] : r) c = -c;
            dedup.insert(std::move(r));
        }
        std::vector<SparseRow> rel(dedup.begin(), dedup.end());
        return abelian::PresentedAbelianGroup(names, rel, name);
    }
};

}  // namespace

abelian::PresentedAbelianGroup lie_presented(int n, int m, long cap) {
    PresentationBuilder b(n, m, false, cap);
    return b.group(n, "L_" + std::to_string(n) + "(" + std::to_string(m) + ")");
}

abelian::PresentedAbelianGroup quasi_lie_presented(int n, int m, long cap) {
    PresentationBuilder b(n, m, true, cap);
    return b.group(n, "L'_" + std::to_string(n) + "(" + std::to_string(m) + ")");
}

abelian::PresentedAbelianGroup lie_free_group(int n, int m) {
    std::vector<std::string> names;
    for (auto& w : lyndon_words(n, m)) names.push_back(trees::format_rooted(standard_bracketing(w)));
    return abelian::PresentedAbelianGroup(names, {},
                                          "L_" + std::to_string(n) + "(" + std::to_string(m) + ")");
}

abelian::PresentedAbelianGroup z2_tensor_lie(int n, int m) {
    std::vector<std::string> names;
    std::vector<SparseRow> rel;
    auto words = lyndon_words(n, m);
    for (int i = 0; i < int(words.size()); ++i) {
        names.push_back(trees::format_rooted(standard_bracketing(words[i])));
        rel.push_back({{i, 2}});
    }
    return abelian::PresentedAbelianGroup(
        names, rel, "Z2(x)L_" + std::to_string(n) + "(" + std::to_string(m) + ")");
}

std::string tensor_gen_name(int letter, const std::string& w) {
    return trees::strand(letter).token() + "(x)" +
           trees::format_rooted(standard_bracketing(w));
}

abelian::PresentedAbelianGroup one_tensor_lie(int q, int m) {
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i)
        for (auto& w : lyndon_words(q, m)) names.push_back(tensor_gen_name(i, w));
    return abelian::PresentedAbelianGroup(
        names, {}, "L_1(x)L_" + std::to_string(q) + "(" + std::to_string(m) + ")");
}

abelian::GroupHom sq_hom(const abelian::PresentedAbelianGroup& dom,
                         const abelian::PresentedAbelianGroup& cod, int k, int m) {
    auto words = lyndon_words(k, m);
    assert(int(words.size()) == dom.num_generators());
    auto monomials = trees::enumerate_rooted(2 * k - 1, m);
    std::map<std::string, int> idx;
    for (int i = 0; i < int(monomials.size()); ++i) idx[monomials[i]->enc()] = i;
    zlin::Mat images(dom.num_generators(), cod.num_generators());
    for (int i = 0; i < int(words.size()); ++i) {
        auto b = standard_bracketing(words[i]);
        images.at(i, idx.at(trees::RootedTree::node(b, b)->enc())) = 1;
    }
    return abelian::GroupHom{&dom, &cod, std::move(images), "sq"};
}

abelian::GroupHom quasi_to_lie_hom(const abelian::PresentedAbelianGroup& dom,
                                   const abelian::PresentedAbelianGroup& cod, int n, int m) {
    (void)n;
    (void)m;
    assert(dom.num_generators() == cod.num_generators());
    return abelian::GroupHom{&dom, &cod, zlin::Mat::identity(dom.num_generators()), "pi"};
}

void qe_axpy(QuasiElement& acc, const QuasiElement& e, const Int& c) {
    if (c == 0) return;
    for (auto& [w, x] : e.lie) {
        Int& slot = acc.lie[w];
        slot += x * c;
        if (slot == 0) acc.lie.erase(w);
    }
    if (c % 2 != 0)
        for (auto& t : e.torsion) {
            auto it = acc.torsion.find(t);
            if (it == acc.torsion.end())
                acc.torsion.insert(t);
            else
                acc.torsion.erase(it);
        }
}

QuasiElement QuasiRewriter::from_word(const std::string& lyndon) const {
    if (!is_lyndon(lyndon)) throw std::invalid_argument("not a Lyndon word: " + lyndon);
    QuasiElement e;
    e.lie[lyndon] = 1;
    return e;
}

QuasiElement QuasiRewriter::from_lie(const std::map<std::string, Int>& coords) const {
    QuasiElement e;
    for (auto& [w, c] : coords)
        if (c != 0) e.lie[w] = c;
    return e;
}

QuasiElement QuasiRewriter::from_monomial(const RootedPtr& monomial) {
    if (monomial->is_leaf()) {
        std::string w(1, monomial->label().key_char());
        return from_word(w);
    }
    return bracket(from_monomial(monomial->left()), from_monomial(monomial->right()));
}

QuasiElement QuasiRewriter::negate(QuasiElement e) {
    for (auto& [w, c] : e.lie) c = -c;
    return e;  // order-two part is its own negative
}

QuasiElement QuasiRewriter::bracket(const QuasiElement& a, const QuasiElement& b) {
    // squares bracket to zero, so only the integral parts interact
    QuasiElement out;
    for (auto& [u, cu] : a.lie)
        for (auto& [v, cv] : b.lie) qe_axpy(out, bracket_words(u, v), cu * cv);
    return out;
}

const QuasiElement& QuasiRewriter::bracket_words(const std::string& u, const std::string& v) {
    auto key = std::make_pair(u, v);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    QuasiElement result;
    if (u == v) {
        result.torsion.insert(u);
    } else if (u > v) {
        result = negate(bracket_words(v, u));
    } else if (standard_factorization(u + v).second == v) {
        result.lie[u + v] = 1;
    } else {
        // straighten via the Jacobi identity on the left factor
        auto [u1, u2] = standard_factorization(u);
        QuasiElement t1 = bracket(from_word(u1), bracket_words(u2, v));
        qe_axpy(t1, bracket(from_word(u2), bracket_words(u1, v)), -1);
        result = std::move(t1);
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
}

}  // namespace treelie::lie
