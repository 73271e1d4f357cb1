#include "treelie/snf.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cassert>

namespace treelie::zlin {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::transposed() const {
    Mat m(c, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(j, i) = at(i, j);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    assert(a.c == b.r);
    Mat out(a.r, b.c);
    for (int i = 0; i < a.r; ++i)
        for (int k = 0; k < a.c; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.c; ++j)
                if (b.at(k, j) != 0) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

Vec row_times_mat(const Vec& x, const Mat& a) {
    assert(int(x.size()) == a.r);
    Vec out(a.c);
    for (int i = 0; i < a.r; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < a.c; ++j)
            if (a.at(i, j) != 0) out[j] += x[i] * a.at(i, j);
    }
    return out;
}

Vec mat_times_col(const Mat& a, const Vec& x) {
    assert(int(x.size()) == a.c);
    Vec out(a.r);
    for (int i = 0; i < a.r; ++i)
        for (int j = 0; j < a.c; ++j)
            if (a.at(i, j) != 0 && x[j] != 0) out[i] += a.at(i, j) * x[j];
    return out;
}

Int det(const Mat& a) {
    assert(a.r == a.c);
    int n = a.r;
    if (n == 0) return 1;
    Mat m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace {

struct Work {
    Mat a;
    SmithForm* s;
    bool wt;       // track transforms
    bool parallel; // allow OpenMP sweeps

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < a.c; ++k) std::swap(a.at(i, k), a.at(j, k));
        if (wt) {
            for (int k = 0; k < s->U.c; ++k) std::swap(s->U.at(i, k), s->U.at(j, k));
            s->detU = -s->detU;
        }
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < a.r; ++k) std::swap(a.at(k, i), a.at(k, j));
        if (wt) {
            for (int k = 0; k < s->V.r; ++k) std::swap(s->V.at(k, i), s->V.at(k, j));
            for (int k = 0; k < s->Vinv.c; ++k) std::swap(s->Vinv.at(i, k), s->Vinv.at(j, k));
            s->detV = -s->detV;
        }
    }

    void negate_row(int i) {
        for (int k = 0; k < a.c; ++k)
            if (a.at(i, k) != 0) a.at(i, k) = -a.at(i, k);
        if (wt) {
            for (int k = 0; k < s->U.c; ++k)
                if (s->U.at(i, k) != 0) s->U.at(i, k) = -s->U.at(i, k);
            s->detU = -s->detU;
        }
    }

    // row i -= q * row t (entries left of `from` are known zero in both rows)
    void row_sub(int i, int t, const Int& q, int from) {
        for (int k = from; k < a.c; ++k)
            if (a.at(t, k) != 0) a.at(i, k) -= q * a.at(t, k);
        if (wt)
            for (int k = 0; k < s->U.c; ++k)
                if (s->U.at(t, k) != 0) s->U.at(i, k) -= q * s->U.at(t, k);
    }

    // col j -= q * col t; Vinv gets the inverse op as a row update
    void col_sub(int j, int t, const Int& q, int from) {
        for (int k = from; k < a.r; ++k)
            if (a.at(k, t) != 0) a.at(k, j) -= q * a.at(k, t);
        if (wt) {
            for (int k = 0; k < s->V.r; ++k)
                if (s->V.at(k, t) != 0) s->V.at(k, j) -= q * s->V.at(k, t);
            for (int k = 0; k < s->Vinv.c; ++k)
                if (s->Vinv.at(j, k) != 0) s->Vinv.at(t, k) += q * s->Vinv.at(j, k);
        }
    }

    // Smallest nonzero magnitude in the trailing submatrix, ties by (row, col).
    bool find_pivot(int t, int& pr, int& pc) const {
        pr = -1;
        pc = -1;
        for (int i = t; i < a.r; ++i)
            for (int j = t; j < a.c; ++j) {
                const Int& x = a.at(i, j);
                if (x == 0) continue;
                if (pr < 0 || mpz_cmpabs(x.get_mpz_t(), a.at(pr, pc).get_mpz_t()) < 0) {
                    pr = i;
                    pc = j;
                }
            }
        return pr >= 0;
    }

    // Clear column t below the pivot; returns true when all entries vanished.
    bool column_pass(int t) {
        while (true) {
            bool any = false;
            std::vector<std::pair<int, Int>> jobs;
            for (int i = t + 1; i < a.r; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
                if (q != 0) jobs.emplace_back(i, q);
                any = true;
            }
#ifdef _OPENMP
            if (parallel && jobs.size() > 1 && size_t(a.c - t) * jobs.size() > 4096) {
#pragma omp parallel for schedule(dynamic)
                for (size_t k = 0; k < jobs.size(); ++k) row_sub(jobs[k].first, t, jobs[k].second, t);
            } else
#endif
            {
                for (auto& [i, q] : jobs) row_sub(i, t, q, t);
            }
            if (!any) return true;
            // remainders are strictly smaller than the pivot; promote the least
            int best = -1;
            for (int i = t + 1; i < a.r; ++i) {
                if (a.at(i, t) == 0) continue;
                if (best < 0 || mpz_cmpabs(a.at(i, t).get_mpz_t(), a.at(best, t).get_mpz_t()) < 0)
                    best = i;
            }
            if (best < 0) return true;
            swap_rows(t, best);
        }
    }

    // Clear row t right of the pivot; returns false when a column swap made
    // the column dirty again and the caller must redo the column pass.
    bool row_pass(int t) {
        std::vector<std::pair<int, Int>> jobs;
        for (int j = t + 1; j < a.c; ++j) {
            if (a.at(t, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
            if (q != 0) jobs.emplace_back(j, q);
        }
#ifdef _OPENMP
        if (parallel && jobs.size() > 1 && size_t(a.r - t) * jobs.size() > 4096) {
#pragma omp parallel for schedule(dynamic)
            for (size_t k = 0; k < jobs.size(); ++k) {
                auto& [j, q] = jobs[k];
                for (int r = t; r < a.r; ++r)
                    if (a.at(r, t) != 0) a.at(r, j) -= q * a.at(r, t);
                if (wt)
                    for (int r = 0; r < s->V.r; ++r)
                        if (s->V.at(r, t) != 0) s->V.at(r, j) -= q * s->V.at(r, t);
            }
            if (wt)
                for (auto& [j, q] : jobs)
                    for (int k = 0; k < s->Vinv.c; ++k)
                        if (s->Vinv.at(j, k) != 0) s->Vinv.at(t, k) += q * s->Vinv.at(j, k);
        } else
#endif
        {
            for (auto& [j, q] : jobs) col_sub(j, t, q, t);
        }
        int best = -1;
        for (int j = t + 1; j < a.c; ++j) {
            if (a.at(t, j) == 0) continue;
            if (best < 0 || mpz_cmpabs(a.at(t, j).get_mpz_t(), a.at(t, best).get_mpz_t()) < 0)
                best = j;
        }
        if (best < 0) return true;
        if (mpz_cmpabs(a.at(t, best).get_mpz_t(), a.at(t, t).get_mpz_t()) < 0) swap_cols(t, best);
        return false;
    }
};

SmithForm smith_impl(const Mat& input, bool with_transforms, bool parallel) {
    SmithForm s;
    s.with_transforms = with_transforms;
    if (with_transforms) {
        s.U = Mat::identity(input.r);
        s.V = Mat::identity(input.c);
        s.Vinv = Mat::identity(input.c);
    }
    Work w{input, &s, with_transforms, parallel};
    int t = 0;
    const int lim = std::min(input.r, input.c);
    while (t < lim) {
        int pr, pc;
        if (!w.find_pivot(t, pr, pc)) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        while (true) {
            if (!w.column_pass(t)) continue;
            if (!w.row_pass(t)) continue;
            // both clean; enforce that the pivot divides the rest
            int di = -1, dj = -1;
            for (int i = t + 1; i < w.a.r && di < 0; ++i)
                for (int j = t + 1; j < w.a.c; ++j)
                    if (w.a.at(i, j) % w.a.at(t, t) != 0) {
                        di = i;
                        dj = j;
                        break;
                    }
            if (di < 0) break;
            // merge the offending row into row t and keep grinding
            w.row_sub(t, di, Int(-1), t);
        }
        if (w.a.at(t, t) < 0) w.negate_row(t);
        ++t;
    }
    s.rank = t;
    s.D = Mat(input.r, input.c);
    for (int i = 0; i < t; ++i) {
        s.D.at(i, i) = w.a.at(i, i);
        s.divisors.push_back(w.a.at(i, i));
    }
    return s;
}

}  // namespace

SmithForm smith(const Mat& a, bool with_transforms) {
    return smith_impl(a, with_transforms, true);
}

SmithForm smith_reference(const Mat& a, bool with_transforms) {
    return smith_impl(a, with_transforms, false);
}

Vec reduce_mod_rowspan(const SmithForm& s, const Vec& v) {
    assert(s.with_transforms);
    assert(int(v.size()) == s.V.r);
    Vec w = row_times_mat(v, s.V);
    for (int i = 0; i < s.rank; ++i) {
        const Int& d = s.divisors[i];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w[i].get_mpz_t(), d.get_mpz_t());
        w[i] -= q * d;
    }
    return row_times_mat(w, s.Vinv);
}

std::optional<Vec> solve_left(const SmithForm& st, const Vec& b) {
    // st is the SNF of A^T; solve x * A = b, i.e. A^T x^T = b^T.
    assert(st.with_transforms);
    assert(int(b.size()) == st.U.r);
    Vec ub = mat_times_col(st.U, b);
    Vec z(st.V.c);
    for (int i = 0; i < int(ub.size()); ++i) {
        if (i < st.rank) {
            if (ub[i] % st.divisors[i] != 0) return std::nullopt;
            z[i] = ub[i] / st.divisors[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_times_col(st.V, z);
}

std::vector<Vec> left_kernel_basis(const SmithForm& st) {
    // st is the SNF of A^T; the left kernel of A is spanned by the columns of
    // V beyond the rank.
    assert(st.with_transforms);
    std::vector<Vec> out;
    for (int j = st.rank; j < st.V.c; ++j) {
        Vec k(st.V.r);
        for (int i = 0; i < st.V.r; ++i) k[i] = st.V.at(i, j);
        out.push_back(std::move(k));
    }
    return out;
}

std::vector<Vec> row_lattice_basis(const SmithForm& s) {
    assert(s.with_transforms);
    std::vector<Vec> out;
    for (int i = 0; i < s.rank; ++i) {
        Vec row(s.Vinv.c);
        for (int k = 0; k < s.Vinv.c; ++k) row[k] = s.divisors[i] * s.Vinv.at(i, k);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace treelie::zlin
