#include "treelie/nilpotent.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "treelie/lie.hpp"

namespace treelie::nilpotent {

namespace {

void push_reduced(std::vector<std::pair<int, int>>& out, int letter, int exp) {
    if (!out.empty() && out.back().first == letter && out.back().second == -exp)
        out.pop_back();
    else
        out.push_back({letter, exp});
}

}  // namespace

GroupWord word_gen(int letter, int exp) {
    if (letter < 1) throw std::invalid_argument("letters are 1-based");
    if (exp == 0) return {};
    GroupWord w;
    for (int i = 0; i < std::abs(exp); ++i) w.letters.push_back({letter, exp > 0 ? 1 : -1});
    return w;
}

GroupWord word_mul(const GroupWord& a, const GroupWord& b) {
    GroupWord out = a;
    for (auto& [l, e] : b.letters) push_reduced(out.letters, l, e);
    return out;
}

GroupWord word_inv(const GroupWord& a) {
    GroupWord out;
    for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it)
        out.letters.push_back({it->first, -it->second});
    return out;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) {
    return word_mul(word_mul(a, b), word_mul(word_inv(a), word_inv(b)));
}

GroupWord parse_word(const std::string& text, int m, bool symplectic) {
    GroupWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        size_t i = 0;
        bool is_y = false;
        if (tok[i] == 'x' || tok[i] == 'X')
            ++i;
        else if (symplectic && (tok[i] == 'y' || tok[i] == 'Y'))
            ++i, is_y = true;
        else if (!std::isdigit((unsigned char)tok[i]))
            throw std::invalid_argument("bad word token: " + tok);
        size_t j = i;
        while (j < tok.size() && std::isdigit((unsigned char)tok[j])) ++j;
        if (j == i) throw std::invalid_argument("bad word token: " + tok);
        int idx = std::stoi(tok.substr(i, j - i));
        int letter = symplectic ? (is_y ? 2 * idx : 2 * idx - 1) : idx;
        if (letter < 1 || letter > m)
            throw std::invalid_argument("letter outside alphabet: " + tok);
        int exp = 1;
        if (j < tok.size()) {
            if (tok[j] != '^') throw std::invalid_argument("bad word token: " + tok);
            exp = std::stoi(tok.substr(j + 1));
            if (exp == 0) continue;
        }
        for (auto& [l, e] : word_gen(letter, exp).letters) push_reduced(w.letters, l, e);
    }
    return w;
}

std::string format_word(const GroupWord& w, bool symplectic) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        auto [l, e] = w.letters[i];
        if (i) os << ' ';
        if (symplectic)
            os << (l % 2 ? 'x' : 'y') << (l + 1) / 2;
        else
            os << 'x' << l;
        if (e < 0) os << "^-1";
    }
    return os.str();
}

MagnusSeries::MagnusSeries(int m, int cutoff) : m_(m), n_(cutoff), deg_(cutoff + 1) {
    if (m < 1 || m > 26 || cutoff < 0) throw std::invalid_argument("bad Magnus parameters");
}

MagnusSeries MagnusSeries::one(int m, int cutoff) {
    MagnusSeries s(m, cutoff);
    s.deg_[0][""] = 1;
    return s;
}

int MagnusSeries::first_positive_degree() const {
    for (int d = 1; d <= n_; ++d)
        if (!deg_[d].empty()) return d;
    return -1;
}

bool MagnusSeries::operator==(const MagnusSeries& o) const {
    return m_ == o.m_ && n_ == o.n_ && deg_ == o.deg_;
}

MagnusSeries series_mul(const MagnusSeries& a, const MagnusSeries& b) {
    if (a.alphabet() != b.alphabet() || a.cutoff() != b.cutoff())
        throw std::invalid_argument("Magnus series mismatch");
    MagnusSeries out(a.alphabet(), a.cutoff());
    for (int da = 0; da <= a.cutoff(); ++da) {
        if (a.degree(da).empty()) continue;
        for (int db = 0; da + db <= a.cutoff(); ++db) {
            if (b.degree(db).empty()) continue;
            auto& slot = out.degree(da + db);
            for (auto& [u, cu] : a.degree(da))
                for (auto& [v, cv] : b.degree(db)) {
                    Int& c = slot[u + v];
                    c += cu * cv;
                    if (c == 0) slot.erase(u + v);
                }
        }
    }
    return out;
}

namespace {

// multiply the running series by the expansion of x_letter^(+-1)
void mul_generator(MagnusSeries& s, int letter, int exp) {
    const int n = s.cutoff();
    const char x = char('a' + letter - 1);
    MagnusSeries g = MagnusSeries::one(s.alphabet(), n);
    if (exp > 0) {
        if (n >= 1) g.degree(1)[std::string(1, x)] = 1;
    } else {
        std::string mono;
        for (int k = 1; k <= n; ++k) {
            mono += x;
            g.degree(k)[mono] = (k % 2) ? -1 : 1;
        }
    }
    s = series_mul(s, g);
}

}  // namespace

MagnusSeries magnus(const GroupWord& w, int m, int cutoff) {
    MagnusSeries s = MagnusSeries::one(m, cutoff);
    for (auto& [l, e] : w.letters) {
        if (l > m) throw std::invalid_argument("letter outside alphabet");
        mul_generator(s, l, e);
    }
    return s;
}

LcsClass lcs_degree(const GroupWord& w, int m, int cap) {
    if (cap < 1 || cap > kMagnusHardCap)
        throw std::invalid_argument("lcs cap must be between 1 and 8");
    LcsClass out;
    MagnusSeries s = magnus(w, m, cap);
    int d = s.first_positive_degree();
    if (d < 0) {
        out.exceeded = true;
        out.degree = cap + 1;
        return out;
    }
    out.degree = d;
    auto b = lie::to_basis(s.degree(d));
    if (!b)
        throw std::logic_error("leading Magnus term escaped the Lie ring (degree " +
                               std::to_string(d) + ")");
    out.leading = *b;
    return out;
}

ArtinAutomorphism artin(const std::vector<GroupWord>& longitudes, int n, int m) {
    if (int(longitudes.size()) != m)
        throw std::invalid_argument("need one longitude per strand");
    if (n < 0 || n + 1 > kMagnusHardCap)
        throw std::invalid_argument("class out of range");
    ArtinAutomorphism a;
    a.m = m;
    a.cls = n;
    a.longitudes = longitudes;

    GroupWord lhs, rhs;
    for (int i = 1; i <= m; ++i) {
        const GroupWord& l = longitudes[i - 1];
        lhs = word_mul(lhs, word_mul(word_mul(l, word_gen(i)), word_inv(l)));
        rhs = word_mul(rhs, word_gen(i));
    }
    MagnusSeries s = magnus(word_mul(lhs, word_inv(rhs)), m, n + 1);
    int d = s.first_positive_degree();
    if (d >= 0) {
        a.valid = false;
        std::ostringstream os;
        os << "conjugated product deviates from x1..x" << m << " in degree " << d << " (term "
           << s.degree(d).begin()->first << ")";
        a.violation = os.str();
    } else {
        a.valid = true;
    }
    return a;
}

int johnson_order(const ArtinAutomorphism& a, int cap) {
    if (cap < 1 || cap + 2 > kMagnusHardCap)
        throw std::invalid_argument("johnson cap out of range");
    int best = cap;
    for (int i = 1; i <= a.m; ++i) {
        LcsClass c = lcs_degree(commutator(a.longitudes[i - 1], word_gen(i)), a.m, cap + 2);
        int ni = c.exceeded ? cap : std::min(cap, c.degree - 2);
        best = std::min(best, ni);
    }
    return best;
}

MilnorInvariant milnor_first_nonvanishing(const ArtinAutomorphism& a) {
    MilnorInvariant out;
    int cap = a.cls + 1;
    std::vector<LcsClass> cls(a.m);
    int dmin = cap + 1;
    for (int i = 0; i < a.m; ++i) {
        cls[i] = lcs_degree(a.longitudes[i], a.m, cap);
        if (!cls[i].exceeded) dmin = std::min(dmin, cls[i].degree);
    }
    if (dmin > cap) {
        out.exceeded = true;
        out.degree = cap + 1;
        return out;
    }
    out.degree = dmin;
    out.tensor.q = dmin;
    for (int i = 0; i < a.m; ++i) {
        if (cls[i].exceeded || cls[i].degree != dmin) continue;
        for (auto& [w, c] : cls[i].leading) {
            auto key = std::make_pair(i + 1, w);
            Int& slot = out.tensor.terms[key];
            slot += c;
            if (slot == 0) out.tensor.terms.erase(key);
        }
    }
    out.in_bracket_kernel = tree_groups::bracket_map(out.tensor).empty();
    return out;
}

SymplecticDElement symplectic_d_element(const std::vector<GroupWord>& images, int genus,
                                        int cap) {
    if (int(images.size()) != 2 * genus)
        throw std::invalid_argument("need images for x1,y1,..,xg,yg");
    SymplecticDElement out;
    const int m = 2 * genus;
    std::vector<LcsClass> psi(m);
    int dmin = cap + 1;
    for (int j = 0; j < m; ++j) {
        psi[j] = lcs_degree(word_mul(word_inv(word_gen(j + 1)), images[j]), m, cap);
        if (!psi[j].exceeded) dmin = std::min(dmin, psi[j].degree);
    }
    if (dmin > cap) {
        out.identity = true;
        out.k = cap;
        return out;
    }
    out.k = dmin - 1;
    out.tensor.q = dmin;
    auto add = [&](int letter, const LcsClass& c, int sgn) {
        if (c.exceeded || c.degree != dmin) return;
        for (auto& [w, v] : c.leading) {
            auto key = std::make_pair(letter, w);
            Int& slot = out.tensor.terms[key];
            slot += sgn * v;
            if (slot == 0) out.tensor.terms.erase(key);
        }
    };
    for (int i = 1; i <= genus; ++i) {
        add(2 * i - 1, psi[2 * i - 1], 1);  // x_i (x) psi(y_i)
        add(2 * i, psi[2 * i - 2], -1);     // y_i (x) psi(x_i)
    }
    out.in_bracket_kernel = tree_groups::bracket_map(out.tensor).empty();
    return out;
}

namespace {

GroupWord tree_word(const trees::RootedPtr& t, const std::vector<GroupWord>& alpha,
                    const GroupWord* infinity_sub) {
    if (t->is_leaf()) {
        if (t->label().is_infinity()) {
            if (!infinity_sub) throw std::invalid_argument("unexpected infinity leaf");
            return *infinity_sub;
        }
        int l = t->label().letter();
        if (l < 1 || l > int(alpha.size()))
            throw std::invalid_argument("leaf label without an attached word");
        return alpha[l - 1];
    }
    return commutator(tree_word(t->left(), alpha, infinity_sub),
                      tree_word(t->right(), alpha, infinity_sub));
}

}  // namespace

ClasperEvaluation clasper_commutator(const trees::RootedPtr& shape,
                                     const std::vector<GroupWord>& alpha, int m, int cap) {
    if (shape->contains_infinity())
        throw std::invalid_argument("use the twisted variant for infinity trees");
    ClasperEvaluation out;
    out.twisted = false;
    out.sign = (shape->order() % 2 == 0) ? -1 : 1;  // (-1)^(order-1)
    out.commutator_word = tree_word(shape, alpha, nullptr);
    out.weight = shape->leaf_count();
    out.cls = lcs_degree(out.commutator_word, m, std::min(cap, kMagnusHardCap));
    return out;
}

ClasperEvaluation clasper_commutator_twisted(const trees::UnitrivalentTree& t, int linked_leaf,
                                             const std::vector<GroupWord>& alpha, int m,
                                             int cap) {
    if (t.infinity_count() != 1)
        throw std::invalid_argument("twisted clasper needs exactly one infinity leaf");
    auto ls = t.leaves();
    if (linked_leaf < 0 || linked_leaf >= int(ls.size()) || ls[linked_leaf].is_infinity())
        throw std::invalid_argument("linked leaf index out of range");
    int inf = 0;
    while (!ls[inf].is_infinity()) ++inf;

    trees::RootedPtr omega_tree = trees::root_at(t, inf);
    GroupWord omega = tree_word(omega_tree, alpha, nullptr);
    trees::RootedPtr c_inf = trees::root_at(t, linked_leaf);

    ClasperEvaluation out;
    out.twisted = true;
    out.sign = 1;
    out.commutator_word = tree_word(c_inf, alpha, &omega);
    out.weight = 2 * t.order() + 1;
    out.cls = lcs_degree(out.commutator_word, m, std::min(cap, kMagnusHardCap));
    return out;
}

}  // namespace treelie::nilpotent
