// Development aid: prints the oracle values that the unit tests freeze as
// literals. Run manually; not wired into ctest.

#include <cstdio>

#include "../support/oracles.hpp"

int main() {
    {
        std::vector<std::vector<double>> shifted = {{1, 2}, {2, 3}, {3, 4}};
        std::printf("icc shifted-column      = %.12f\n", oracles::icc_2_1(shifted));
        std::vector<std::vector<double>> anti = {{1, 5}, {5, 1}};
        std::printf("icc anti-correlated     = %.12f\n", oracles::icc_2_1(anti));
        std::vector<std::vector<double>> ident = {{1, 1, 1}, {4, 4, 4}, {2, 2, 2}};
        std::printf("icc identical raters    = %.12f\n", oracles::icc_2_1(ident));
    }
    {
        std::vector<double> a = {1.2, 3.4, 2.2, 5.0};
        std::vector<double> b = {2.9, 3.1, 4.4, 4.6};
        auto r = oracles::mann_whitney_exact(a, b);
        std::printf("mwu 4v4: U = %.6f  p = %.12f\n", r.statistic, r.p);
        std::vector<double> c = {1, 2, 2, 3};
        std::vector<double> d = {2, 2, 3, 4};
        auto rt = oracles::mann_whitney_exact(c, d);
        std::printf("mwu ties: U = %.6f  p = %.12f\n", rt.statistic, rt.p);
    }
    {
        std::vector<double> before = {5, 3, 8, 4, 9, 7};
        std::vector<double> after = {6, 1, 9, 7, 8, 10};
        auto r = oracles::wilcoxon_exact(before, after);
        std::printf("wilcoxon 6 pairs: W = %.6f  p = %.12f\n", r.w, r.p);
    }
    {
        std::vector<std::vector<int>> rows = {{1, 0, 0}, {1, 1, 0}, {0, 1, 1},
                                              {1, 1, 1}, {0, 0, 1}, {1, 0, 0}};
        auto q = oracles::cochran_q(rows);
        std::printf("cochran toy: Q (column form) = %.12f  degenerate = %d\n", q.q, q.degenerate);
        std::printf("cochran toy: chi2_sf(Q, 2)   = %.12f\n", oracles::chi2_sf(q.q, 2));
        std::printf("cochran toy: permutation p   = %.12f\n", oracles::cochran_q_permutation_p(rows));
    }
    {
        std::printf("phi Table-8-B           = %.12f\n", oracles::phi_signed(46, 15, 11, 120));
        std::printf("pearson chi2 Table-8-B  = %.12f\n", oracles::pearson_chi2(46, 15, 11, 120));
        std::printf("mcnemar chi2 (15,11)    = %.12f\n", oracles::mcnemar_chi2(15, 11, true));
        std::printf("chi2_sf(9/26, 1)        = %.12f\n", oracles::chi2_sf(9.0 / 26.0, 1));
    }
    {
        std::vector<std::pair<double, double>> pts = {{0.4, 8}, {0.5, 14}, {0.3, 14}};
        auto f = oracles::pareto_frontier(pts);
        std::printf("pareto example frontier indices:");
        for (auto i : f) std::printf(" %zu", i);
        std::printf("\n");
    }
    return 0;
}
