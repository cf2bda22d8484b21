#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oracles {

double icc_2_1(const std::vector<std::vector<double>>& ratings) {
    const size_t n = ratings.size();
    const size_t k = ratings.front().size();
    double grand = 0.0;
    for (const auto& row : ratings)
        for (double x : row) grand += x;
    grand /= static_cast<double>(n * k);

    std::vector<double> rm(n, 0.0), cm(k, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            rm[i] += ratings[i][j] / static_cast<double>(k);
            cm[j] += ratings[i][j] / static_cast<double>(n);
        }

    double sst = 0.0, ssr = 0.0, ssc = 0.0, sse = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            const double x = ratings[i][j];
            sst += (x - grand) * (x - grand);
            const double resid = x - rm[i] - cm[j] + grand;
            sse += resid * resid;
        }
    for (size_t i = 0; i < n; ++i) ssr += static_cast<double>(k) * (rm[i] - grand) * (rm[i] - grand);
    for (size_t j = 0; j < k; ++j) ssc += static_cast<double>(n) * (cm[j] - grand) * (cm[j] - grand);

    if (sst <= 1e-12) return 1.0;

    const double msr = ssr / static_cast<double>(n - 1);
    const double msc = ssc / static_cast<double>(k - 1);
    const double mse = sse / static_cast<double>((n - 1) * (k - 1));
    const double numer = msr - mse;
    const double denom =
        msr + static_cast<double>(k - 1) * mse + static_cast<double>(k) / static_cast<double>(n) * (msc - mse);
    double value;
    if (denom == 0.0)
        value = numer > 0.0 ? 1.0 : (numer < 0.0 ? -1.0 : 0.0);
    else
        value = numer / denom;
    return std::clamp(value, -1.0, 1.0);
}

namespace {

double pair_count_u(const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0.0;
    for (double x : a)
        for (double y : b) {
            if (x > y)
                u += 1.0;
            else if (x == y)
                u += 0.5;
        }
    return u;
}

} // namespace

ExactTest mann_whitney_exact(const std::vector<double>& a, const std::vector<double>& b) {
    const double u_obs = pair_count_u(a, b);
    const size_t n1 = a.size(), n2 = b.size();
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<int> labels(n1, 0);
    labels.resize(n1 + n2, 1);
    std::sort(labels.begin(), labels.end());

    long total = 0, extreme = 0;
    const double margin = std::abs(u_obs - mu) - 1e-9;
    do {
        std::vector<double> ga, gb;
        for (size_t i = 0; i < labels.size(); ++i) (labels[i] == 0 ? ga : gb).push_back(pooled[i]);
        const double u = pair_count_u(ga, gb);
        if (std::abs(u - mu) >= margin) ++extreme;
        ++total;
    } while (std::next_permutation(labels.begin(), labels.end()));

    return ExactTest{u_obs, static_cast<double>(extreme) / static_cast<double>(total)};
}

WilcoxonOracle wilcoxon_exact(const std::vector<double>& before, const std::vector<double>& after) {
    std::vector<double> diffs;
    for (size_t i = 0; i < before.size(); ++i) {
        const double d = after[i] - before[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) return {};

    const size_t n = diffs.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return std::abs(diffs[i]) < std::abs(diffs[j]); });
    std::vector<double> rank(n, 0.0);
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t t = i; t <= j; ++t) rank[order[t]] = mid;
        i = j + 1;
    }

    double w_plus = 0.0, total_rank = 0.0;
    for (size_t i = 0; i < n; ++i) {
        total_rank += rank[i];
        if (diffs[i] > 0) w_plus += rank[i];
    }
    const double w = std::min(w_plus, total_rank - w_plus);

    long extreme = 0;
    const long combos = 1L << n;
    for (long mask = 0; mask < combos; ++mask) {
        double wp = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1L << i)) wp += rank[i];
        if (std::min(wp, total_rank - wp) <= w + 1e-9) ++extreme;
    }
    return WilcoxonOracle{w, static_cast<double>(extreme) / static_cast<double>(combos), true};
}

double mcnemar_chi2(long b, long c, bool continuity) {
    if (b + c == 0) return 0.0;
    const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c));
    const double num = continuity ? (diff - 1.0) * (diff - 1.0) : diff * diff;
    return num / static_cast<double>(b + c);
}

CochranOracle cochran_q(const std::vector<std::vector<int>>& rows) {
    const size_t k = rows.front().size();
    double n_total = 0.0, sum_c2 = 0.0, sum_r2 = 0.0;
    std::vector<double> col(k, 0.0);
    for (const auto& row : rows) {
        double r = 0.0;
        for (size_t j = 0; j < k; ++j) {
            r += row[j];
            col[j] += row[j];
        }
        n_total += r;
        sum_r2 += r * r;
    }
    for (double c : col) sum_c2 += c * c;
    const double denom = static_cast<double>(k) * n_total - sum_r2;
    if (denom == 0.0) return CochranOracle{0.0, true};
    const double q =
        static_cast<double>(k - 1) * (static_cast<double>(k) * sum_c2 - n_total * n_total) / denom;
    return CochranOracle{q, false};
}

double cochran_q_permutation_p(const std::vector<std::vector<int>>& rows) {
    const auto obs = cochran_q(rows);
    if (obs.degenerate) return 1.0;

    std::vector<std::vector<std::vector<int>>> row_arrangements;
    for (const auto& row : rows) {
        std::vector<int> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::vector<int>> arr;
        do arr.push_back(sorted);
        while (std::next_permutation(sorted.begin(), sorted.end()));
        row_arrangements.push_back(std::move(arr));
    }

    long total = 0, extreme = 0;
    std::vector<size_t> pick(rows.size(), 0);
    while (true) {
        std::vector<std::vector<int>> candidate;
        for (size_t i = 0; i < rows.size(); ++i) candidate.push_back(row_arrangements[i][pick[i]]);
        const auto q = cochran_q(candidate);
        if (q.degenerate || q.q >= obs.q - 1e-9) ++extreme;
        ++total;
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == row_arrangements[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

double pearson_chi2(long a, long b, long c, long d) {
    const double n = static_cast<double>(a + b + c + d);
    const double row[2] = {static_cast<double>(a + b), static_cast<double>(c + d)};
    const double colm[2] = {static_cast<double>(a + c), static_cast<double>(b + d)};
    const double obs[2][2] = {{static_cast<double>(a), static_cast<double>(b)},
                              {static_cast<double>(c), static_cast<double>(d)}};
    double chi2 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double expected = row[i] * colm[j] / n;
            chi2 += (obs[i][j] - expected) * (obs[i][j] - expected) / expected;
        }
    return chi2;
}

double phi_signed(long a, long b, long c, long d) {
    const double num = static_cast<double>(a) * d - static_cast<double>(b) * c;
    const double den = std::sqrt(static_cast<double>(a + b) * static_cast<double>(c + d) *
                                 static_cast<double>(a + c) * static_cast<double>(b + d));
    return num / den;
}

namespace {

double chi2_pdf(double t, int df) {
    const double half = df / 2.0;
    return std::exp((half - 1.0) * std::log(t) - t / 2.0 - half * std::log(2.0) - std::lgamma(half));
}

} // namespace

double chi2_sf(double x, int df) {
    if (x <= 0.0) return 1.0;
    if (df == 1) return std::erfc(std::sqrt(x / 2.0));
    // pdf is bounded for df >= 2; composite Simpson on [0, x].
    const int steps = 200000; // even
    const double h = x / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double t = i * h;
        const double f = t == 0.0 ? (df == 2 ? 0.5 : 0.0) : chi2_pdf(t, df);
        const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f;
    }
    const double cdf = acc * h / 3.0;
    return std::max(0.0, 1.0 - cdf);
}

std::vector<std::size_t> pareto_frontier(const std::vector<std::pair<double, double>>& ae_as) {
    std::vector<std::size_t> keep;
    for (size_t i = 0; i < ae_as.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < ae_as.size() && !dominated; ++j) {
            if (j == i) continue;
            const bool ge = ae_as[j].first >= ae_as[i].first;
            const bool le = ae_as[j].second <= ae_as[i].second;
            const bool strict = ae_as[j].first > ae_as[i].first || ae_as[j].second < ae_as[i].second;
            dominated = ge && le && strict;
        }
        if (!dominated) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end(), [&](size_t i, size_t j) {
        if (ae_as[i].second != ae_as[j].second) return ae_as[i].second < ae_as[j].second;
        if (ae_as[i].first != ae_as[j].first) return ae_as[i].first < ae_as[j].first;
        return i < j;
    });
    return keep;
}

} // namespace oracles
