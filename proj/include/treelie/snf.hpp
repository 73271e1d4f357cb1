#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treelie::zlin {

using Int = mpz_class;
using Vec = std::vector<Int>;

// Dense integer matrix, row major. Zero rows or columns are legal.
struct Mat {
    int r = 0, c = 0;
    std::vector<Int> v;

    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), v(size_t(rows) * size_t(cols)) {}

    Int& at(int i, int j) { return v[size_t(i) * c + j]; }
    const Int& at(int i, int j) const { return v[size_t(i) * c + j]; }

    static Mat identity(int n);
    Mat transposed() const;
    bool operator==(const Mat& o) const { return r == o.r && c == o.c && v == o.v; }
};

Mat mat_mul(const Mat& a, const Mat& b);
Vec row_times_mat(const Vec& x, const Mat& a);
Vec mat_times_col(const Mat& a, const Vec& x);

// Fraction-free determinant (Bareiss); intended for small test matrices.
Int det(const Mat& a);

// U * A * V = D with U, V unimodular and D diagonal, divisors d1 | d2 | ...
// Vinv is maintained alongside V so callers can reduce against the row span
// of A without inverting anything. detU/detV are tracked incrementally.
struct SmithForm {
    Mat U, V, Vinv, D;
    int rank = 0;
    std::vector<Int> divisors;  // the nonzero diagonal entries, all positive
    int detU = 1, detV = 1;
    bool with_transforms = true;
};

// Production routine; uses OpenMP for the row/column update sweeps when the
// matrix is large enough. Pivoting is smallest-nonzero-magnitude with a
// deterministic (row, col) tie break, so results do not depend on thread
// count or schedule.
SmithForm smith(const Mat& a, bool with_transforms = true);

// Compact textbook implementation kept as the serial reference for testing
// and benchmarking. Same pivot rule, no OpenMP, no shortcuts.
SmithForm smith_reference(const Mat& a, bool with_transforms = true);

// Canonical representative of v modulo the row span of A, where s = smith(A)
// and v has A.c entries: coordinates are reduced into [0, d_i) against the
// divisor chain. reduce(reduce(v)) == reduce(v); reduce(v) == 0 iff v lies in
// the row span.
Vec reduce_mod_rowspan(const SmithForm& s, const Vec& v);

// Solve x * A = b over the integers; st must be smith(A.transposed()).
// Returns one solution if any exists.
std::optional<Vec> solve_left(const SmithForm& st, const Vec& b);

// Basis of { x : x * A = 0 }; st must be smith(A.transposed()).
std::vector<Vec> left_kernel_basis(const SmithForm& st);

// Basis of the lattice generated by the rows of G; s must be smith(G).
// Rows of the result are d_i * Vinv.row(i) for i < rank.
std::vector<Vec> row_lattice_basis(const SmithForm& s);

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace treelie::zlin
