#pragma once

// Brute-force reference implementations used to cross-check the statistics
// module. Everything here favors obviousness over speed and deliberately
// takes a different algebraic or enumerative route than the library.

#include <cstddef>
#include <vector>

namespace oracles {

/// Smell rule, restated directly: mean of the scores strictly below 3.
inline bool smelly(const std::vector<int>& scores) {
    double sum = 0;
    for (int s : scores) sum += s;
    return sum / static_cast<double>(scores.size()) < 3.0;
}

/// ICC(2,1) with the error sum of squares accumulated cell-by-cell from the
/// interaction residuals instead of by subtraction.
double icc_2_1(const std::vector<std::vector<double>>& ratings);

struct ExactTest {
    double statistic = 0.0;
    double p = 1.0;
};

/// Mann-Whitney U by pair counting, exact two-sided p by enumerating every
/// assignment of the pooled sample into the two groups.
ExactTest mann_whitney_exact(const std::vector<double>& a, const std::vector<double>& b);

/// Wilcoxon signed-rank W = min(W+, W-), exact two-sided p by enumerating all
/// 2^n sign assignments. Zero differences are dropped first.
struct WilcoxonOracle {
    double w = 0.0;
    double p = 1.0;
    bool defined = false; // false when every difference is zero
};
WilcoxonOracle wilcoxon_exact(const std::vector<double>& before, const std::vector<double>& after);

/// Continuity-corrected McNemar chi-squared from the definition.
double mcnemar_chi2(long b, long c, bool continuity);

/// Cochran's Q via the column-sum form (k-1)(k*sum(C_j^2) - N^2) / (k*N - sum(R_i^2)).
struct CochranOracle {
    double q = 0.0;
    bool degenerate = false;
};
CochranOracle cochran_q(const std::vector<std::vector<int>>& rows);

/// Exact permutation p for Cochran's Q: every within-row rearrangement.
/// Usable only for tiny matrices; provided for sanity checks.
double cochran_q_permutation_p(const std::vector<std::vector<int>>& rows);

/// Pearson chi-squared via expected counts, cell by cell.
double pearson_chi2(long a, long b, long c, long d);

/// Signed phi from the definition.
double phi_signed(long a, long b, long c, long d);

/// Chi-squared survival function computed independently of the library:
/// erfc closed form for df = 1, composite-Simpson quadrature otherwise.
double chi2_sf(double x, int df);

/// Indices of non-dominated points (maximize ae, minimize as), O(n^2),
/// sorted by ascending as (ties by ae then index).
std::vector<std::size_t> pareto_frontier(const std::vector<std::pair<double, double>>& ae_as);

} // namespace oracles
