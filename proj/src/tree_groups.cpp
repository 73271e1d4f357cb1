#include "treelie/tree_groups.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace treelie::tree_groups {

namespace {

using abelian::SparseRow;
using trees::Label;
using trees::RootedTree;

SparseRow map_to_sparse(const std::map<int, Int>& row) {
    SparseRow out;
    for (auto& [i, c] : row)
        if (c != 0) out.push_back({i, c});
    return out;
}

// Sign-normalized dedupe so a relator and its negative count once.
struct RowCollector {
    std::vector<SparseRow> rows;
    std::set<SparseRow> seen;

    void add(const std::map<int, Int>& row) {
        SparseRow r = map_to_sparse(row);
        if (r.empty()) return;
        if (r.front().second < 0)
            for (auto& [i, c] : r) c = -c;
        if (seen.insert(r).second) rows.push_back(std::move(r));
    }
};

void acc_tree(std::map<int, Int>& acc, const std::map<std::string, int>& index,
              const UnitrivalentTree& t, const Int& c) {
    auto cf = trees::canonicalize(t);
    auto it = index.find(cf.key);
    if (it == index.end())
        throw std::logic_error("tree outside the generator list: " + trees::format_unitrivalent(t));
    acc[it->second] += c * cf.sign;
}

// IHX relators from every internal edge of the rooted view, both directions.
void ihx_walk(const RootedPtr& node, const RootedPtr& ctx,
              const std::function<void(const RootedPtr&, const RootedPtr&, const RootedPtr&,
                                       const RootedPtr&)>& emit) {
    const RootedPtr& l = node->left();
    const RootedPtr& r = node->right();
    if (!l->is_leaf()) {
        emit(r, ctx, l->left(), l->right());
        ihx_walk(l, RootedTree::node(r, ctx), emit);
    }
    if (!r->is_leaf()) {
        emit(ctx, l, r->left(), r->right());
        ihx_walk(r, RootedTree::node(ctx, l), emit);
    }
}

void add_ihx_rows(RowCollector& rc, const std::map<std::string, int>& index,
                  const std::vector<CanonicalForm>& gens) {
    auto one_direction = [&](std::map<int, Int>& row, const RootedPtr& a, const RootedPtr& b,
                             const RootedPtr& c, const RootedPtr& d) {
        acc_tree(row, index, UnitrivalentTree::star(RootedTree::node(c, d), a, b), 1);
        acc_tree(row, index, UnitrivalentTree::star(a, RootedTree::node(b, c), d), -1);
        acc_tree(row, index, UnitrivalentTree::star(a, RootedTree::node(b, d), c), 1);
    };
    for (auto& g : gens) {
        if (g.order < 2) continue;
        RootedPtr root_ctx = RootedTree::leaf(g.tree.leaves()[0]);
        RootedPtr rooted = trees::root_at(g.tree, 0);
        ihx_walk(rooted, root_ctx,
                 [&](const RootedPtr& a, const RootedPtr& b, const RootedPtr& c,
                     const RootedPtr& d) {
                     std::map<int, Int> row;
                     one_direction(row, a, b, c, d);
                     rc.add(row);
                     row.clear();
                     one_direction(row, c, d, a, b);
                     rc.add(row);
                 });
    }
}

void add_two_torsion_rows(RowCollector& rc, const std::vector<CanonicalForm>& gens, int base) {
    for (int i = 0; i < int(gens.size()); ++i)
        if (gens[i].symmetric) rc.add({{base + i, Int(2)}});
}

std::vector<std::string> gen_names(const std::vector<CanonicalForm>& gens) {
    std::vector<std::string> names;
    names.reserve(gens.size());
    for (auto& g : gens) names.push_back(trees::format_unitrivalent(g.tree));
    return names;
}

std::map<std::string, int> build_index(const std::vector<CanonicalForm>& gens) {
    std::map<std::string, int> index;
    for (int i = 0; i < int(gens.size()); ++i) index.emplace(gens[i].key, i);
    return index;
}

// Doubling sum attached to splitting an infinity vertex into the edge (a, b):
// for every leaf v of a, the tree l(v) -< (T_v, T_v) read off graft(a, b).
void acc_doubling_sum(std::map<int, Int>& acc, const std::map<std::string, int>& index,
                      const RootedPtr& a, const RootedPtr& b) {
    UnitrivalentTree g = trees::graft(a, b);
    auto ls = g.leaves();
    int lo = a->is_leaf() ? 0 : b->leaf_count();
    int hi = a->is_leaf() ? 1 : b->leaf_count() + a->leaf_count();
    for (int v = lo; v < hi; ++v) {
        RootedPtr tv = trees::root_at(g, v);
        acc_tree(acc, index, trees::graft(RootedTree::leaf(ls[v]), RootedTree::node(tv, tv)), 1);
    }
}

std::string kind_tag(TreeKind k) {
    switch (k) {
        case TreeKind::T: return "T";
        case TreeKind::TTildeQuotient: return "Ttilde";
        case TreeKind::TTildeInfty: return "Ttilde";
    }
    return "T";
}

std::string group_name(TreeKind k, int n, int m) {
    std::string s = kind_tag(k) + "_" + std::to_string(n) + "(" + std::to_string(m) + ")";
    if (k == TreeKind::TTildeQuotient) s += "[quotient]";
    if (k == TreeKind::TTildeInfty) s += "[infty]";
    return s;
}

void require_odd(int n, const char* what) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument(std::string(what) + " is defined in odd orders only");
}

std::string letter_word(int letter) { return std::string(1, char('a' + letter - 1)); }

}  // namespace

TreeGroup tree_group(int n, int m, long cap, bool parallel) {
    if (n < 0 || m < 1) throw std::invalid_argument("tree_group: bad order or alphabet");
    TreeGroup g;
    g.kind = TreeKind::T;
    g.order = n;
    g.labels = m;
    g.gens = trees::enumerate_trees(n, m, cap, parallel);
    g.ordinary_count = int(g.gens.size());
    g.index = build_index(g.gens);
    RowCollector rc;
    add_two_torsion_rows(rc, g.gens, 0);
    add_ihx_rows(rc, g.index, g.gens);
    g.group = abelian::PresentedAbelianGroup(gen_names(g.gens), rc.rows,
                                             group_name(g.kind, n, m));
    return g;
}

Vec tree_coords(const TreeGroup& g, const UnitrivalentTree& t) {
    std::map<int, Int> acc;
    acc_tree(acc, g.index, t, 1);
    Vec v = g.zero();
    for (auto& [i, c] : acc) v[i] = c;
    return v;
}

Vec delta(const TreeGroup& target, const UnitrivalentTree& t) {
    if (t.infinity_count() > 0) throw std::invalid_argument("delta: infinity leaf");
    if (target.order != 2 * t.order() + 1)
        throw std::invalid_argument("delta: codomain order must be 2*order+1");
    std::map<int, Int> acc;
    auto ls = t.leaves();
    for (int v = 0; v < int(ls.size()); ++v) {
        RootedPtr tv = trees::root_at(t, v);
        acc_tree(acc, target.index, trees::graft(RootedTree::leaf(ls[v]), RootedTree::node(tv, tv)),
                 1);
    }
    Vec out = target.zero();
    for (auto& [i, c] : acc) out[i] = c;
    return out;
}

abelian::PresentedAbelianGroup z2_tree_group(const TreeGroup& t) {
    std::vector<SparseRow> rel = t.group.relator_rows();
    for (int i = 0; i < t.group.num_generators(); ++i) rel.push_back({{i, Int(2)}});
    return abelian::PresentedAbelianGroup(t.group.generator_names(), rel,
                                          "Z2(x)" + t.group.name());
}

abelian::GroupHom delta_hom(const abelian::PresentedAbelianGroup& dom, const TreeGroup& cod,
                            const std::vector<CanonicalForm>& dom_gens) {
    if (int(dom_gens.size()) != dom.num_generators())
        throw std::invalid_argument("delta_hom: generator list mismatch");
    zlin::Mat images(dom.num_generators(), cod.group.num_generators());
    for (int i = 0; i < int(dom_gens.size()); ++i) {
        Vec row = delta(cod, dom_gens[i].tree);
        for (int j = 0; j < images.c; ++j) images.at(i, j) = row[j];
    }
    return abelian::GroupHom{&dom, &cod.group, std::move(images), "delta"};
}

TreeGroup reduced_tree_group_quotient(int n, int m, long cap, bool parallel) {
    require_odd(n, "the reduced tree group");
    TreeGroup g = tree_group(n, m, cap, parallel);
    g.kind = TreeKind::TTildeQuotient;
    RowCollector rc;
    for (auto& r : g.group.relator_rows()) rc.add(std::map<int, Int>(r.begin(), r.end()));
    for (auto& src : trees::enumerate_trees((n - 1) / 2, m, cap, parallel)) {
        Vec row = delta(g, src.tree);
        std::map<int, Int> acc;
        for (int i = 0; i < int(row.size()); ++i)
            if (row[i] != 0) acc[i] = row[i];
        rc.add(acc);
    }
    g.group = abelian::PresentedAbelianGroup(gen_names(g.gens), rc.rows,
                                             group_name(g.kind, n, m));
    return g;
}

TreeGroup reduced_tree_group_presented(int n, int m, TTildeOptions opts, long cap,
                                       bool parallel) {
    require_odd(n, "the reduced tree group");
    int half = (n + 1) / 2;
    TreeGroup g;
    g.kind = TreeKind::TTildeInfty;
    g.order = n;
    g.labels = m;
    g.gens = trees::enumerate_trees(n, m, cap, parallel);
    g.ordinary_count = int(g.gens.size());
    auto infg = trees::enumerate_infty_trees(half, m, cap, parallel);
    g.gens.insert(g.gens.end(), infg.begin(), infg.end());
    g.index = build_index(g.gens);

    RowCollector rc;
    add_two_torsion_rows(rc, g.gens, 0);
    add_ihx_rows(rc, g.index, g.gens);  // ordinary and infinity trees alike
    if (opts.include_boundary_twist) {
        for (int h = 1; h <= m; ++h)
            for (auto& j : trees::enumerate_rooted(half - 1, m, cap)) {
                std::map<int, Int> row;
                acc_tree(row, g.index,
                         trees::graft(RootedTree::leaf(trees::strand(h)),
                                      RootedTree::node(RootedTree::leaf(trees::infinity_label()), j)),
                         1);
                acc_tree(row, g.index,
                         trees::graft(RootedTree::leaf(trees::strand(h)), RootedTree::node(j, j)),
                         -1);
                rc.add(row);
            }
    }
    if (opts.include_2Jinfty)
        for (int i = g.ordinary_count; i < int(g.gens.size()); ++i) rc.add({{i, Int(2)}});

    g.group = abelian::PresentedAbelianGroup(gen_names(g.gens), rc.rows,
                                             group_name(g.kind, n, m));
    return g;
}

void tensor_elem_axpy(TensorElement& acc, const TensorElement& e, const Int& c) {
    if (e.terms.empty() || c == 0) return;
    if (acc.terms.empty())
        acc.q = e.q;
    else if (acc.q != e.q)
        throw std::invalid_argument("tensor degree mismatch");
    for (auto& [k, v] : e.terms) {
        Int& slot = acc.terms[k];
        slot += c * v;
        if (slot == 0) acc.terms.erase(k);
    }
}

Vec tensor_to_vec(const TensorElement& e, int m) {
    auto words = lie::lyndon_words(e.q, m);
    std::map<std::string, int> pos;
    for (int i = 0; i < int(words.size()); ++i) pos.emplace(words[i], i);
    Vec v(size_t(m) * words.size(), 0);
    for (auto& [key, c] : e.terms) {
        auto& [letter, w] = key;
        if (letter < 1 || letter > m) throw std::invalid_argument("letter outside alphabet");
        auto it = pos.find(w);
        if (it == pos.end()) throw std::invalid_argument("not a Lyndon word: " + w);
        v[size_t(letter - 1) * words.size() + it->second] = c;
    }
    return v;
}

namespace {

TensorElement eta_over(const UnitrivalentTree& t, int m, int lo, int hi) {
    TensorElement e;
    e.q = t.order() + 1;
    auto ls = t.leaves();
    for (int v = lo; v < hi; ++v) {
        int letter = ls[v].letter();
        if (letter > m) throw std::invalid_argument("label alphabet mismatch");
        auto coords = lie::monomial_to_basis(trees::root_at(t, v));
        for (auto& [w, c] : coords) {
            auto key = std::make_pair(letter, w);
            Int& slot = e.terms[key];
            slot += c;
            if (slot == 0) e.terms.erase(key);
        }
    }
    return e;
}

}  // namespace

TensorElement eta(const UnitrivalentTree& t, int m) {
    if (t.infinity_count() > 0) throw std::invalid_argument("eta: infinity leaf");
    return eta_over(t, m, 0, t.leaf_count());
}

TensorElement half_eta_doubled(const RootedPtr& j, int m) {
    if (j->contains_infinity()) throw std::invalid_argument("half_eta_doubled: infinity leaf");
    UnitrivalentTree t = trees::graft(j, j);
    int lo = j->is_leaf() ? 0 : j->leaf_count();
    return eta_over(t, m, lo, lo + j->leaf_count());
}

std::map<std::string, Int> bracket_map(const TensorElement& e) {
    lie::Tensor acc;
    for (auto& [key, c] : e.terms) {
        auto& [letter, w] = key;
        lie::Tensor gen{{letter_word(letter), Int(1)}};
        lie::tensor_axpy(acc, lie::tensor_bracket(gen, lie::tensor_expand(lie::standard_bracketing(w))),
                         c);
    }
    auto b = lie::to_basis(acc);
    if (!b) throw std::logic_error("bracket of a Lie tensor escaped the Lie ring");
    return *b;
}

lie::QuasiElement bracket_map_quasi(const TensorElement& e) {
    lie::QuasiRewriter rw;
    lie::QuasiElement acc;
    for (auto& [key, c] : e.terms) {
        auto& [letter, w] = key;
        lie::qe_axpy(acc, rw.bracket(rw.from_word(letter_word(letter)), rw.from_word(w)), c);
    }
    return acc;
}

std::map<std::string, Int> sl_map(const TensorElement& d) {
    if (d.q < 1 || d.q % 2 == 0)
        throw std::invalid_argument("sl_map: tensor degree must be odd");
    lie::QuasiElement q = bracket_map_quasi(d);
    if (!q.lie.empty())
        throw std::invalid_argument("sl_map: element is not in the bracket kernel");
    std::map<std::string, Int> out;
    for (auto& w : q.torsion) out[w] = 1;
    return out;
}

namespace {

DGroup d_group_impl(int n, int m, bool quasi) {
    if (n < 0 || m < 1) throw std::invalid_argument("d_group: bad order or alphabet");
    int q = n + 1;
    DGroup d;
    d.order = n;
    d.m = m;
    d.quasi = quasi;
    d.domain = lie::one_tensor_lie(q, m);

    auto dom_words = lie::lyndon_words(q, m);
    const int w_count = int(dom_words.size());
    std::string cod_tag = (quasi ? "L'_" : "L_") + std::to_string(n + 2) + "(" +
                          std::to_string(m) + ")[abstract]";

    abelian::PresentedAbelianGroup cod;
    zlin::Mat images(m * w_count, 0);
    if (!quasi) {
        cod = lie::lie_free_group(n + 2, m);
        auto cod_words = lie::lyndon_words(n + 2, m);
        std::map<std::string, int> cpos;
        for (int i = 0; i < int(cod_words.size()); ++i) cpos.emplace(cod_words[i], i);
        images = zlin::Mat(m * w_count, int(cod_words.size()));
        for (int letter = 1; letter <= m; ++letter)
            for (int wi = 0; wi < w_count; ++wi) {
                lie::Tensor t = lie::tensor_bracket(
                    lie::Tensor{{letter_word(letter), Int(1)}},
                    lie::tensor_expand(lie::standard_bracketing(dom_words[wi])));
                auto b = lie::to_basis(t);
                if (!b) throw std::logic_error("bracket escaped the Lie ring");
                for (auto& [w, c] : *b) images.at((letter - 1) * w_count + wi, cpos.at(w)) = c;
            }
    } else {
        // codomain: free Lyndon part in degree n+2 plus order-two square classes
        auto cod_words = lie::lyndon_words(n + 2, m);
        std::vector<std::string> names;
        std::map<std::string, int> cpos;
        for (auto& w : cod_words) {
            cpos.emplace(w, int(names.size()));
            names.push_back(trees::format_rooted(lie::standard_bracketing(w)));
        }
        std::map<std::string, int> tpos;
        std::vector<SparseRow> rel;
        if ((n + 2) % 2 == 0) {
            for (auto& u : lie::lyndon_words((n + 2) / 2, m)) {
                tpos.emplace(u, int(names.size()));
                rel.push_back({{int(names.size()), Int(2)}});
                names.push_back("sq(" + trees::format_rooted(lie::standard_bracketing(u)) + ")");
            }
        }
        cod = abelian::PresentedAbelianGroup(names, rel, cod_tag);
        images = zlin::Mat(m * w_count, int(names.size()));
        lie::QuasiRewriter rw;
        for (int letter = 1; letter <= m; ++letter)
            for (int wi = 0; wi < w_count; ++wi) {
                auto qe = rw.bracket(rw.from_word(letter_word(letter)),
                                     rw.from_word(dom_words[wi]));
                int row = (letter - 1) * w_count + wi;
                for (auto& [w, c] : qe.lie) images.at(row, cpos.at(w)) = c;
                for (auto& u : qe.torsion) images.at(row, tpos.at(u)) = 1;
            }
    }

    abelian::GroupHom h{&d.domain, &cod, std::move(images),
                        quasi ? "quasi-bracket" : "bracket"};
    auto lattice = abelian::preimage_of_zero_lattice(h);
    d.basis = zlin::Mat(int(lattice.size()), d.domain.num_generators());
    for (int i = 0; i < int(lattice.size()); ++i)
        for (int j = 0; j < d.basis.c; ++j) d.basis.at(i, j) = lattice[i][j];
    d.basis_t_snf = zlin::smith(d.basis.transposed(), true);

    // The kernel of a map out of a free group is free of rank = basis size.
    std::vector<std::string> knames;
    for (int i = 0; i < int(lattice.size()); ++i) knames.push_back("d" + std::to_string(i + 1));
    d.group = abelian::PresentedAbelianGroup(
        knames, {},
        std::string(quasi ? "D'_" : "D_") + std::to_string(n) + "(" + std::to_string(m) + ")");
    return d;
}

}  // namespace

DGroup d_group(int n, int m) { return d_group_impl(n, m, false); }

DGroup d_group_quasi(int n, int m) { return d_group_impl(n, m, true); }

std::optional<Vec> d_coords(const DGroup& d, const TensorElement& e) {
    if (!e.terms.empty() && e.q != d.order + 1)
        throw std::invalid_argument("d_coords: degree mismatch");
    Vec v = e.terms.empty() ? Vec(d.domain.num_generators(), 0) : tensor_to_vec(e, d.m);
    return zlin::solve_left(d.basis_t_snf, v);
}

EtaHom eta_hom(const TreeGroup& t, const DGroup& d) {
    EtaHom out;
    if (t.labels != d.m || t.order != d.order) {
        out.failure = "eta_hom: order or alphabet mismatch";
        return out;
    }
    zlin::Mat images(t.group.num_generators(), d.group.num_generators());
    for (int i = 0; i < int(t.gens.size()); ++i) {
        auto coords = d_coords(d, eta(t.gens[i].tree, t.labels));
        if (!coords) {
            out.failure = "eta image of " + t.group.generator_name(i) +
                          " lies outside the bracket kernel lattice";
            return out;
        }
        for (int j = 0; j < images.c; ++j) images.at(i, j) = (*coords)[j];
    }
    out.images_in_codomain = true;
    out.hom = abelian::GroupHom{&t.group, &d.group, std::move(images), "eta"};
    return out;
}

namespace {

Vec phi_split(const TreeGroup& q, const RootedPtr& a, const RootedPtr& b) {
    std::map<int, Int> acc;
    acc_doubling_sum(acc, q.index, a, b);
    Vec out = q.zero();
    for (auto& [i, c] : acc) out[i] = c;
    return out;
}

std::string report_str(const abelian::GroupReport& r) {
    std::ostringstream os;
    os << "Z^" << r.free_rank;
    for (auto& t : r.torsion) os << " + Z/" << t.get_str();
    return os.str();
}

}  // namespace

CompareReport compare_presentations(int n, int m, TTildeOptions opts, long cap) {
    CompareReport rep;
    rep.with_2Jinfty = opts.include_2Jinfty;
    TreeGroup q = reduced_tree_group_quotient(n, m, cap);
    TreeGroup p = reduced_tree_group_presented(n, m, opts, cap);
    if (p.ordinary_count != int(q.gens.size()))
        throw std::logic_error("compare_presentations: generator misalignment");
    for (int i = 0; i < p.ordinary_count; ++i)
        if (p.gens[i].key != q.gens[i].key)
            throw std::logic_error("compare_presentations: generator misalignment");

    zlin::Mat fwd(p.group.num_generators(), q.group.num_generators());
    for (int i = 0; i < p.ordinary_count; ++i) fwd.at(i, i) = 1;
    for (int i = p.ordinary_count; i < int(p.gens.size()); ++i) {
        auto ls = p.gens[i].tree.leaves();
        int inf = 0;
        while (!ls[inf].is_infinity()) ++inf;
        RootedPtr r = trees::root_at(p.gens[i].tree, inf);
        Vec row = phi_split(q, r->left(), r->right());
        for (int j = 0; j < fwd.c; ++j) fwd.at(i, j) = row[j];
    }
    zlin::Mat bwd(q.group.num_generators(), p.group.num_generators());
    for (int i = 0; i < bwd.r; ++i) bwd.at(i, i) = 1;

    abelian::GroupHom phi{&p.group, &q.group, fwd, "phi"};
    abelian::GroupHom psi{&q.group, &p.group, bwd, "psi"};
    auto cphi = abelian::certify(phi);
    auto cpsi = abelian::certify(psi);
    rep.forward_well_defined = cphi.well_defined;
    rep.backward_well_defined = cpsi.well_defined;

    std::ostringstream detail;
    if (!cphi.well_defined)
        detail << "phi breaks on relator #" << *cphi.offending_relator << "; ";
    if (!cpsi.well_defined)
        detail << "psi breaks on relator #" << *cpsi.offending_relator << "; ";

    rep.mutual_inverse = true;
    for (int i = 0; i < p.group.num_generators() && rep.mutual_inverse; ++i) {
        Vec e(p.group.num_generators(), 0);
        e[i] = 1;
        Vec round = abelian::apply_hom(psi, abelian::apply_hom(phi, e));
        if (!p.group.equal_elements(round, e)) {
            rep.mutual_inverse = false;
            detail << "psi(phi(g)) != g at generator " << p.group.generator_name(i) << "; ";
        }
    }
    for (int i = 0; i < q.group.num_generators() && rep.mutual_inverse; ++i) {
        Vec e(q.group.num_generators(), 0);
        e[i] = 1;
        Vec round = abelian::apply_hom(phi, abelian::apply_hom(psi, e));
        if (!q.group.equal_elements(round, e)) {
            rep.mutual_inverse = false;
            detail << "phi(psi(g)) != g at generator " << q.group.generator_name(i) << "; ";
        }
    }

    rep.quotient = q.group.report();
    rep.presented = p.group.report();
    rep.structures_equal = rep.quotient.free_rank == rep.presented.free_rank &&
                           rep.quotient.torsion == rep.presented.torsion;
    if (!rep.structures_equal)
        detail << "structures differ: quotient " << report_str(rep.quotient) << " vs presented "
               << report_str(rep.presented) << "; ";
    rep.detail = detail.str();
    return rep;
}

TopSequenceReport verify_top_sequence(int n, int m) {
    if (n < 3 || (n + 1) % 4 != 0)
        throw std::invalid_argument("the top sequence lives in orders 4k-1");
    TopSequenceReport rep;
    int k = (n + 1) / 4;
    int q = 2 * k + 1;  // Lyndon degree feeding the capped doubling

    abelian::PresentedAbelianGroup left = lie::z2_tensor_lie(q, m);
    TreeGroup mid = reduced_tree_group_quotient(n, m);
    DGroup d = d_group(n, m);

    auto words = lie::lyndon_words(q, m);
    zlin::Mat limg(int(words.size()), mid.group.num_generators());
    for (int i = 0; i < int(words.size()); ++i) {
        RootedPtr j = lie::standard_bracketing(words[i]);
        Vec row = phi_split(mid, j->left(), j->right());
        for (int c = 0; c < limg.c; ++c) limg.at(i, c) = row[c];
    }
    abelian::GroupHom lh{&left, &mid.group, std::move(limg), "capped doubling"};

    zlin::Mat rimg(mid.group.num_generators(), d.group.num_generators());
    for (int i = 0; i < int(mid.gens.size()); ++i) {
        auto coords = d_coords(d, eta(mid.gens[i].tree, m));
        if (!coords) throw std::logic_error("eta image escaped the bracket kernel");
        for (int c = 0; c < rimg.c; ++c) rimg.at(i, c) = (*coords)[c];
    }
    abelian::GroupHom rh{&mid.group, &d.group, std::move(rimg), "eta"};

    auto cl = abelian::certify(lh);
    auto cr = abelian::certify(rh);
    auto ex = abelian::verify_exact({&lh, &rh});

    rep.left_well_defined = cl.well_defined;
    rep.right_well_defined = cr.well_defined;
    rep.left_injective = cl.well_defined && cl.injective;
    rep.right_surjective = cr.well_defined && cr.surjective;
    rep.exact_middle = ex.exact();
    rep.left = left.report();
    rep.middle = mid.group.report();
    rep.right = d.group.report();

    std::ostringstream detail;
    detail << "Z2(x)L_" << q << " = " << report_str(rep.left) << ", " << mid.group.name() << " = "
           << report_str(rep.middle) << ", " << d.group.name() << " = " << report_str(rep.right);
    if (!rep.pass()) {
        if (!cl.well_defined) detail << "; left map not well defined";
        if (!cr.well_defined) detail << "; right map not well defined";
        if (cl.well_defined && !cl.injective) detail << "; left map not injective";
        if (cr.well_defined && !cr.surjective) detail << "; right map not surjective";
        if (!rep.exact_middle) detail << "; middle junction not exact";
    }
    rep.detail = detail.str();
    return rep;
}

}  // namespace tree_groups
