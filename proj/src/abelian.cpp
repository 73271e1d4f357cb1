#include "treelie/abelian.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace treelie::abelian {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<Int> invariant_factor_chain(std::vector<Int> d) {
    std::sort(d.begin(), d.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < d.size(); ++i)
            for (size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] == 0) continue;
                Int g = gcd(d[i], d[j]);
                Int l = d[i] / g * d[j];
                d[i] = g;
                d[j] = l;
                changed = true;
            }
        if (changed) std::sort(d.begin(), d.end());
    }
    return d;
}

PresentedAbelianGroup::PresentedAbelianGroup(std::vector<std::string> generator_names,
                                             std::vector<SparseRow> relators, std::string name)
    : name_(std::move(name)), gen_names_(std::move(generator_names)) {
    // normalize rows: merge duplicate columns, drop zeros
    for (auto& row : relators) {
        std::map<int, Int> acc;
        for (auto& [j, c] : row) {
            assert(j >= 0 && j < num_generators());
            acc[j] += c;
        }
        SparseRow norm;
        for (auto& [j, c] : acc)
            if (c != 0) norm.emplace_back(j, c);
        row = std::move(norm);
    }
    relators_ = std::move(relators);
    num_relators_ = long(relators_.size());

    const int n = num_generators();
    UnionFind uf(n);
    for (auto& row : relators_)
        for (size_t k = 1; k < row.size(); ++k) uf.unite(row[0].first, row[k].first);

    // gather components that are actually touched by a relator
    std::map<int, std::vector<int>> buckets;  // root -> generator list
    std::vector<char> touched(n, 0);
    for (auto& row : relators_)
        for (auto& [j, c] : row) touched[j] = 1;
    for (int j = 0; j < n; ++j)
        if (touched[j]) buckets[uf.find(j)].push_back(j);

    comp_of_gen_.assign(n, -1);
    std::map<int, std::vector<const SparseRow*>> comp_rows;
    for (auto& row : relators_)
        if (!row.empty()) comp_rows[uf.find(row[0].first)].push_back(&row);

    std::vector<Int> all_divisors;
    long rank_total = 0;
    for (auto& [root, gens] : buckets) {
        auto comp = std::make_shared<Component>();
        comp->gens = gens;
        comp->n = int(gens.size());
        for (int k = 0; k < comp->n; ++k) comp->local[gens[k]] = k;
        auto& rows = comp_rows[root];
        Mat m(int(rows.size()), comp->n);
        for (int i = 0; i < int(rows.size()); ++i)
            for (auto& [j, c] : *rows[i]) m.at(i, comp->local.at(j)) = c;
        comp->snf = zlin::smith(m, true);
        rank_total += comp->snf.rank;
        for (auto& dv : comp->snf.divisors) all_divisors.push_back(dv);
        int ci = int(comps_.size());
        for (int g : gens) comp_of_gen_[g] = ci;
        comps_.push_back(std::move(comp));
    }

    free_rank_ = long(n) - rank_total;
    auto chain = invariant_factor_chain(std::move(all_divisors));
    for (auto& dv : chain)
        if (dv > 1) torsion_.push_back(dv);
}

Vec PresentedAbelianGroup::reduce(const Vec& v) const {
    assert(int(v.size()) == num_generators());
    Vec out = v;
    for (auto& comp : comps_) {
        Vec local(comp->n);
        for (int k = 0; k < comp->n; ++k) local[k] = v[comp->gens[k]];
        Vec red = zlin::reduce_mod_rowspan(comp->snf, local);
        for (int k = 0; k < comp->n; ++k) out[comp->gens[k]] = red[k];
    }
    return out;
}

bool PresentedAbelianGroup::equal_elements(const Vec& a, const Vec& b) const {
    assert(a.size() == b.size());
    Vec d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return is_zero_element(d);
}

GroupReport PresentedAbelianGroup::report() const {
    GroupReport r;
    r.free_rank = free_rank_;
    r.torsion = torsion_;
    r.generators = num_generators();
    r.relators = num_relators_;
    return r;
}

Mat PresentedAbelianGroup::dense_relator_matrix() const {
    Mat m(int(relators_.size()), num_generators());
    for (int i = 0; i < int(relators_.size()); ++i)
        for (auto& [j, c] : relators_[i]) m.at(i, j) = c;
    return m;
}

Vec apply_hom(const GroupHom& h, const Vec& x) {
    return h.cod->reduce(zlin::row_times_mat(x, h.images));
}

namespace {

// Stack the hom image rows on top of the codomain relators.
Mat stacked_image_and_relators(const GroupHom& h) {
    Mat rb = h.cod->dense_relator_matrix();
    Mat m(h.images.r + rb.r, h.cod->num_generators());
    for (int i = 0; i < h.images.r; ++i)
        for (int j = 0; j < m.c; ++j) m.at(i, j) = h.images.at(i, j);
    for (int i = 0; i < rb.r; ++i)
        for (int j = 0; j < m.c; ++j) m.at(h.images.r + i, j) = rb.at(i, j);
    return m;
}

std::string combo_name(const PresentedAbelianGroup& g, const Vec& v) {
    std::string s;
    for (int i = 0; i < int(v.size()); ++i) {
        if (v[i] == 0) continue;
        if (!s.empty()) s += v[i] > 0 ? " + " : " - ";
        else if (v[i] < 0) s += "-";
        Int a = abs(v[i]);
        if (a != 1) s += a.get_str() + "*";
        s += g.generator_name(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::vector<Vec> preimage_of_zero_lattice(const GroupHom& h) {
    const int na = h.dom->num_generators();
    Mat stacked = stacked_image_and_relators(h);
    SmithForm st = zlin::smith(stacked.transposed(), true);
    std::vector<Vec> xs;
    for (auto& full : zlin::left_kernel_basis(st)) {
        Vec x(full.begin(), full.begin() + na);
        if (!zlin::is_zero(x)) xs.push_back(std::move(x));
    }
    if (xs.empty()) return {};
    Mat gmat(int(xs.size()), na);
    for (int i = 0; i < int(xs.size()); ++i)
        for (int j = 0; j < na; ++j) gmat.at(i, j) = xs[i][j];
    SmithForm sg = zlin::smith(gmat, true);
    return zlin::row_lattice_basis(sg);
}

HomCertificate certify(const GroupHom& h) {
    HomCertificate cert;
    assert(h.images.r == h.dom->num_generators());
    assert(h.images.c == h.cod->num_generators());

    cert.well_defined = true;
    const auto& rel = h.dom->relator_rows();
    for (int i = 0; i < int(rel.size()); ++i) {
        Vec img(h.cod->num_generators());
        for (auto& [j, c] : rel[i])
            for (int k = 0; k < h.images.c; ++k)
                if (h.images.at(j, k) != 0) img[k] += c * h.images.at(j, k);
        if (!h.cod->is_zero_element(img)) {
            cert.well_defined = false;
            cert.offending_relator = i;
            return cert;
        }
    }

    // kernel: lattice of domain vectors mapping into the codomain relator
    // span, presented modulo the domain relators
    std::vector<Vec> kbasis = preimage_of_zero_lattice(h);
    const int s = int(kbasis.size());
    std::vector<std::string> knames;
    std::vector<SparseRow> krels;
    if (s > 0) {
        Mat kmat(s, h.dom->num_generators());
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < kmat.c; ++j) kmat.at(i, j) = kbasis[i][j];
        for (int i = 0; i < s; ++i) knames.push_back(combo_name(*h.dom, kbasis[i]));
        SmithForm skt = zlin::smith(kmat.transposed(), true);
        for (auto& row : h.dom->relator_rows()) {
            Vec dense(h.dom->num_generators());
            for (auto& [j, c] : row) dense[j] = c;
            auto coords = zlin::solve_left(skt, dense);
            assert(coords.has_value());  // relators lie in the lattice
            SparseRow sr;
            for (int k = 0; k < s; ++k)
                if ((*coords)[k] != 0) sr.emplace_back(k, (*coords)[k]);
            krels.push_back(std::move(sr));
        }
    }
    cert.kernel = PresentedAbelianGroup(std::move(knames), std::move(krels),
                                        "ker " + h.name);
    cert.injective = cert.kernel.is_trivial();

    // cokernel: codomain modulo image and relators
    std::vector<SparseRow> crels;
    for (int i = 0; i < h.images.r; ++i) {
        SparseRow sr;
        for (int j = 0; j < h.images.c; ++j)
            if (h.images.at(i, j) != 0) sr.emplace_back(j, h.images.at(i, j));
        crels.push_back(std::move(sr));
    }
    for (auto& row : h.cod->relator_rows()) crels.push_back(row);
    cert.cokernel = PresentedAbelianGroup(h.cod->generator_names(), std::move(crels),
                                          "coker " + h.name);
    cert.surjective = cert.cokernel.is_trivial();
    return cert;
}

ExactnessReport verify_exact(const std::vector<const GroupHom*>& seq) {
    ExactnessReport rep;
    for (auto* h : seq) {
        auto c = certify(*h);
        if (!c.well_defined) rep.well_defined = false;
    }
    if (!rep.well_defined) return rep;

    for (size_t k = 0; k + 1 < seq.size(); ++k) {
        const GroupHom& f = *seq[k];
        const GroupHom& g = *seq[k + 1];
        assert(f.cod == g.dom);
        JunctionReport jr;

        jr.composes_to_zero = true;
        for (int i = 0; i < f.images.r; ++i) {
            Vec mid(f.images.c);
            for (int j = 0; j < f.images.c; ++j) mid[j] = f.images.at(i, j);
            Vec end = zlin::row_times_mat(mid, g.images);
            if (!g.cod->is_zero_element(end)) {
                jr.composes_to_zero = false;
                break;
            }
        }

        jr.kernel_inside_image = true;
        Mat stacked_f = stacked_image_and_relators(f);
        SmithForm st_f = zlin::smith(stacked_f.transposed(), true);
        for (auto& kv : preimage_of_zero_lattice(g)) {
            if (!zlin::solve_left(st_f, kv).has_value()) {
                jr.kernel_inside_image = false;
                jr.witness = kv;
                break;
            }
        }
        rep.junctions.push_back(std::move(jr));
    }
    return rep;
}

}  // namespace treelie::abelian
