// Micro-benchmark for the Smith normal form kernels: the pivoting production
// routine against the textbook reference, plus two realistic relator-matrix
// workloads. Exits nonzero if the two kernels ever disagree on the divisors.
#include <chrono>
#include <iostream>
#include <random>

#include "treelie/lie.hpp"
#include "treelie/snf.hpp"
#include "treelie/tree_groups.hpp"

using namespace treelie;
using zlin::Int;
using zlin::Mat;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

Mat random_matrix(int rows, int cols, int density_pct, std::mt19937& rng) {
    Mat a(rows, cols);
    std::uniform_int_distribution<int> pct(0, 99), val(-9, 9);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (pct(rng) < density_pct) a.at(i, j) = val(rng);
    return a;
}

bool bench_pair(const std::string& label, const Mat& a) {
    auto t0 = std::chrono::steady_clock::now();
    auto fast = zlin::smith(a, false);
    double fast_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto ref = zlin::smith_reference(a);
    double ref_ms = ms_since(t0);
    bool ok = fast.divisors == ref.divisors;
    std::cout << label << ": " << a.r << "x" << a.c << "  smith " << fast_ms
              << " ms, reference " << ref_ms << " ms, rank " << fast.rank
              << (ok ? "" : "  ** DIVISOR MISMATCH **") << "\n";
    return ok;
}

}  // namespace

int main() {
    bool ok = true;
    std::mt19937 rng(20240817);

    for (int n : {20, 40, 60})
        ok = bench_pair("random dense " + std::to_string(n), random_matrix(n, n, 85, rng)) && ok;
    for (int n : {80, 120})
        ok = bench_pair("random sparse " + std::to_string(n),
                        random_matrix(n, n + 20, 12, rng)) && ok;

    // Realistic workloads: tree group and quasi-Lie relator matrices.
    auto t3 = tree_groups::tree_group(3, 3);
    ok = bench_pair("T_3(3) relators", t3.group.dense_relator_matrix()) && ok;
    auto lq = lie::quasi_lie_presented(4, 3);
    ok = bench_pair("L'_4(3) relators", lq.dense_relator_matrix()) && ok;

    std::cout << (ok ? "kernels agree on all inputs\n" : "kernel disagreement detected\n");
    return ok ? 0 : 1;
}
