#include "tooldesc/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace tooldesc::stats {

namespace {

double chi2_sf(double x, int df) {
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(df));
    return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// Midranks of the given values (average rank across ties, 1-based).
std::vector<double> midranks(const std::vector<double>& values) {
    const size_t n = values.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return values[i] < values[j]; });
    std::vector<double> rank(n, 0.0);
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t t = i; t <= j; ++t) rank[order[t]] = mid;
        i = j + 1;
    }
    return rank;
}

/// Sum over tie groups of t^3 - t.
double tie_term(const std::vector<double>& sorted_values) {
    double total = 0.0;
    for (size_t i = 0; i < sorted_values.size();) {
        size_t j = i;
        while (j + 1 < sorted_values.size() && sorted_values[j + 1] == sorted_values[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        total += t * t * t - t;
        i = j + 1;
    }
    return total;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

Json TaskOutcome::to_json() const {
    return Json{{"task", task},
                {"domain", domain},
                {"model", model},
                {"evaluators_passed", evaluators_passed},
                {"evaluators_total", evaluators_total},
                {"steps", steps},
                {"variant", variant}};
}

Result<TaskOutcome> TaskOutcome::from_json(const Json& j) {
    if (!j.is_object()) return make_error(ErrorCode::Parse, "task outcome must be a JSON object");
    TaskOutcome t;
    try {
        t.task = j.at("task").get<std::string>();
        t.evaluators_passed = j.at("evaluators_passed").get<int>();
        t.evaluators_total = j.at("evaluators_total").get<int>();
        t.steps = j.at("steps").get<int>();
    } catch (const std::exception& e) {
        return make_error(ErrorCode::Parse, std::string("task outcome missing field: ") + e.what());
    }
    t.domain = j.value("domain", "");
    t.model = j.value("model", "");
    t.variant = j.value("variant", "baseline");
    if (t.task.empty()) return make_error(ErrorCode::Validation, "task outcome has an empty task id");
    if (t.evaluators_total < 1)
        return make_error(ErrorCode::Validation, "task '" + t.task + "': evaluators_total must be >= 1");
    if (t.evaluators_passed < 0 || t.evaluators_passed > t.evaluators_total)
        return make_error(ErrorCode::Validation,
                          "task '" + t.task + "': evaluators_passed out of range");
    if (t.steps < 0) return make_error(ErrorCode::Validation, "task '" + t.task + "': negative steps");
    return t;
}

Result<std::vector<TaskOutcome>> read_outcomes_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) return make_error(ErrorCode::Storage, "cannot open outcomes file: " + path);
    std::vector<TaskOutcome> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            return make_error(ErrorCode::Parse,
                              path + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        auto t = TaskOutcome::from_json(j);
        if (!t)
            return make_error(t.error().code,
                              path + ":" + std::to_string(line_no) + ": " + t.error().message);
        out.push_back(std::move(t).value());
    }
    return out;
}

Json RunSummary::to_json() const {
    return Json{{"sr", sr}, {"ae", ae}, {"as", as}, {"n_tasks", n_tasks},
                {"high_ae_count", high_ae_count}};
}

RunSummary summarize(std::span<const TaskOutcome> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("summarize: no outcomes");
    RunSummary s;
    s.n_tasks = static_cast<int>(outcomes.size());
    int full = 0;
    double ae_sum = 0.0, steps_sum = 0.0;
    for (const auto& o : outcomes) {
        if (o.success()) ++full;
        ae_sum += o.pass_fraction();
        steps_sum += o.steps;
        // fraction >= 0.80 without float round-off: 5*passed >= 4*total
        if (5L * o.evaluators_passed >= 4L * o.evaluators_total) ++s.high_ae_count;
    }
    s.sr = 100.0 * full / s.n_tasks;
    s.ae = ae_sum / s.n_tasks;
    s.as = steps_sum / s.n_tasks;
    return s;
}

double delta_sr_pp(const RunSummary& before, const RunSummary& after) { return after.sr - before.sr; }

std::vector<size_t> pareto_frontier(std::span<const ParetoPoint> points) {
    std::vector<size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0);
    // Sweep in ascending AS; a point survives unless an already-kept point
    // strictly beats it in AE at equal-or-lower AS, or ties AE at lower AS.
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        if (points[i].as != points[j].as) return points[i].as < points[j].as;
        if (points[i].ae != points[j].ae) return points[i].ae > points[j].ae;
        return i < j;
    });
    std::vector<size_t> keep;
    double best_ae = -std::numeric_limits<double>::infinity();
    double best_ae_as = 0.0;
    for (size_t i : idx) {
        const bool dominated =
            points[i].ae < best_ae ||
            (points[i].ae == best_ae && points[i].as > best_ae_as);
        if (!dominated) {
            keep.push_back(i);
            if (points[i].ae > best_ae) {
                best_ae = points[i].ae;
                best_ae_as = points[i].as;
            }
        }
    }
    std::sort(keep.begin(), keep.end(), [&](size_t i, size_t j) {
        if (points[i].as != points[j].as) return points[i].as < points[j].as;
        if (points[i].ae != points[j].ae) return points[i].ae < points[j].ae;
        return i < j;
    });
    return keep;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
    const size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> rank = midranks(pooled);

    double r1 = 0.0;
    for (size_t i = 0; i < n1; ++i) r1 += rank[i];
    const double u = r1 - static_cast<double>(n1) * (n1 + 1) / 2.0;
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

    MannWhitneyResult out;
    out.u = u;

    const double combos = binomial(static_cast<int>(n), static_cast<int>(n1));
    if (combos <= 200000.0) {
        out.exact = true;
        // Enumerate the subsets of size n1 as sorted index selections and
        // subset-sum the fixed midranks.
        std::vector<size_t> pick(n1);
        std::iota(pick.begin(), pick.end(), 0);
        const double margin = std::abs(u - mu) - 1e-9;
        long total = 0, extreme = 0;
        while (true) {
            double rsum = 0.0;
            for (size_t i : pick) rsum += rank[i];
            const double u_prime = rsum - static_cast<double>(n1) * (n1 + 1) / 2.0;
            if (std::abs(u_prime - mu) >= margin) ++extreme;
            ++total;
            // next combination
            size_t i = n1;
            while (i > 0) {
                --i;
                if (pick[i] != i + n - n1) {
                    ++pick[i];
                    for (size_t j = i + 1; j < n1; ++j) pick[j] = pick[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    out.p = static_cast<double>(extreme) / static_cast<double>(total);
                    return out;
                }
            }
        }
    }

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    const double ties = tie_term(sorted);
    const double nn = static_cast<double>(n);
    const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                       ((nn + 1.0) - ties / (nn * (nn - 1.0)));
    if (var <= 0.0) {
        out.p = 1.0; // every pooled value identical
        return out;
    }
    const double z = (u - mu) / std::sqrt(var);
    out.p = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
    return out;
}

double bonferroni(double p, int m) { return std::min(1.0, p * static_cast<double>(m)); }

WilcoxonResult wilcoxon_signed_rank(std::span<const double> before, std::span<const double> after) {
    if (before.size() != after.size())
        throw std::invalid_argument("wilcoxon_signed_rank: length mismatch");
    if (before.empty()) throw std::invalid_argument("wilcoxon_signed_rank: empty sample");

    std::vector<double> diffs;
    for (size_t i = 0; i < before.size(); ++i) {
        const double d = after[i] - before[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult out;
    if (diffs.empty()) return out; // no nonzero differences: W undefined, p = 1

    out.defined = true;
    out.n_nonzero = static_cast<int>(diffs.size());
    const size_t n = diffs.size();

    std::vector<double> abs_d(n);
    for (size_t i = 0; i < n; ++i) abs_d[i] = std::abs(diffs[i]);
    const std::vector<double> rank = midranks(abs_d);

    double w_plus = 0.0, total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        total += rank[i];
        if (diffs[i] > 0) w_plus += rank[i];
    }
    out.w = std::min(w_plus, total - w_plus);

    if (n <= 25) {
        out.exact = true;
        // Distribution of 2*W+ over all sign assignments (midranks are
        // half-integral, so doubling keeps everything integral).
        const long total2 = std::lround(2.0 * total);
        std::vector<double> dp(static_cast<size_t>(total2) + 1, 0.0);
        dp[0] = 1.0;
        for (size_t i = 0; i < n; ++i) {
            const long r2 = std::lround(2.0 * rank[i]);
            for (long s = total2; s >= r2; --s) dp[static_cast<size_t>(s)] += dp[static_cast<size_t>(s - r2)];
        }
        const long m2 = std::lround(2.0 * out.w);
        double extreme = 0.0, all = 0.0;
        for (long s = 0; s <= total2; ++s) {
            all += dp[static_cast<size_t>(s)];
            if (s <= m2 || s >= total2 - m2) extreme += dp[static_cast<size_t>(s)];
        }
        out.p = extreme / all;
        return out;
    }

    std::vector<double> sorted = abs_d;
    std::sort(sorted.begin(), sorted.end());
    const double nn = static_cast<double>(n);
    const double mu = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term(sorted) / 48.0;
    if (var <= 0.0) {
        out.p = 1.0;
        return out;
    }
    const double z = (out.w - mu) / std::sqrt(var);
    out.p = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
    return out;
}

McNemarResult mcnemar(long b, long c, bool continuity) {
    if (b < 0 || c < 0) throw std::invalid_argument("mcnemar: negative discordant count");
    McNemarResult out;
    if (b + c == 0) {
        out.degenerate = true;
        return out;
    }
    const double diff = std::abs(static_cast<double>(b - c));
    const double num = continuity ? (diff - 1.0) * (diff - 1.0) : diff * diff;
    out.chi2 = num / static_cast<double>(b + c);
    out.p = chi2_sf(out.chi2, 1);
    return out;
}

CochranResult cochran_q(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw std::invalid_argument("cochran_q: no rows");
    const size_t k = rows.front().size();
    if (k < 3) throw std::invalid_argument("cochran_q: needs at least 3 configurations");
    for (const auto& row : rows) {
        if (row.size() != k) throw std::invalid_argument("cochran_q: ragged matrix");
        for (int v : row)
            if (v != 0 && v != 1) throw std::invalid_argument("cochran_q: outcomes must be 0/1");
    }

    CochranResult out;
    out.df = static_cast<int>(k) - 1;

    std::vector<double> col(k, 0.0);
    double sum_r = 0.0, sum_r2 = 0.0;
    for (const auto& row : rows) {
        double r = 0.0;
        for (size_t j = 0; j < k; ++j) {
            r += row[j];
            col[j] += row[j];
        }
        sum_r += r;
        sum_r2 += r * r;
    }
    const double denom = static_cast<double>(k) * sum_r - sum_r2;
    if (denom == 0.0) {
        out.degenerate = true; // every row constant
        return out;
    }
    const double c_bar = sum_r / static_cast<double>(k);
    double dev = 0.0;
    for (double c : col) dev += (c - c_bar) * (c - c_bar);
    out.q = static_cast<double>(k) * static_cast<double>(k - 1) * dev / denom;
    out.p = chi2_sf(out.q, out.df);
    return out;
}

ChiSquarePhiResult chi_square_phi(long a, long b, long c, long d) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw std::invalid_argument("chi_square_phi: negative cell count");
    ChiSquarePhiResult out;
    const double r1 = static_cast<double>(a + b), r2 = static_cast<double>(c + d);
    const double c1 = static_cast<double>(a + c), c2 = static_cast<double>(b + d);
    if (r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) {
        out.degenerate = true;
        return out;
    }
    const double n = r1 + r2;
    const double det = static_cast<double>(a) * d - static_cast<double>(b) * c;
    out.chi2 = n * det * det / (r1 * r2 * c1 * c2);
    out.p = chi2_sf(out.chi2, 1);
    out.phi = det / std::sqrt(r1 * r2 * c1 * c2);
    out.phi_defined = true;
    return out;
}

SmellFreeCount count_smell_free(std::span<const jury::SmellReport> reports,
                                std::span<const rubric::RubricComponent> components) {
    SmellFreeCount out;
    for (const auto& r : reports) {
        bool clean = true;
        for (auto c : components)
            if (r.column(c).smelly()) {
                clean = false;
                break;
            }
        if (clean) ++out.count;
    }
    out.percent = reports.empty() ? 0.0 : 100.0 * out.count / static_cast<double>(reports.size());
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

} // namespace tooldesc::stats
