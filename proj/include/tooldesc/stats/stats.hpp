#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tooldesc/json.hpp"
#include "tooldesc/jury/jury.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::stats {

/// One benchmark task execution: the unit SR/AE/AS are computed from.
struct TaskOutcome {
    std::string task;
    std::string domain;
    std::string model;
    int evaluators_passed = 0;
    int evaluators_total = 1;
    int steps = 0;
    std::string variant; // "baseline", "augmented", or a selection label like "P+G"

    bool success() const { return evaluators_passed == evaluators_total; }
    double pass_fraction() const {
        return static_cast<double>(evaluators_passed) / static_cast<double>(evaluators_total);
    }

    Json to_json() const;
    static Result<TaskOutcome> from_json(const Json& j);
};

/// One TaskOutcome JSON object per line; blank lines ignored.
Result<std::vector<TaskOutcome>> read_outcomes_jsonl(const std::string& path);

struct RunSummary {
    double sr = 0.0;       // percent of tasks passing every evaluator
    double ae = 0.0;       // mean pass fraction
    double as = 0.0;       // mean steps
    int n_tasks = 0;
    int high_ae_count = 0; // tasks with pass fraction >= 0.80

    Json to_json() const;
};

/// Throws std::invalid_argument on an empty input.
RunSummary summarize(std::span<const TaskOutcome> outcomes);

/// Percentage-point change in SR (after - before).
double delta_sr_pp(const RunSummary& before, const RunSummary& after);

struct ParetoPoint {
    double ae = 0.0;
    double as = 0.0;
};

/// Indices of the non-dominated points (maximize AE, minimize AS), sorted by
/// ascending AS. Points equal in both coordinates are all retained.
std::vector<size_t> pareto_frontier(std::span<const ParetoPoint> points);

struct MannWhitneyResult {
    double u = 0.0; // U statistic of the first sample
    double p = 1.0;
    bool exact = false; // true when p came from full enumeration
};

/// Rank-sum U with midrank ties. Small samples get an exact two-sided p by
/// enumerating every group assignment; larger ones use the tie-corrected
/// normal approximation. Throws std::invalid_argument on an empty sample.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

double bonferroni(double p, int m);

struct WilcoxonResult {
    double w = 0.0; // min(W+, W-)
    double p = 1.0;
    bool defined = false; // false when every difference is zero
    bool exact = false;
    int n_nonzero = 0;
};

/// Zero differences dropped, signed midranks, W = min(W+, W-). Exact
/// enumeration for n <= 25, tie-corrected normal approximation beyond.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> before, std::span<const double> after);

struct McNemarResult {
    double chi2 = 0.0;
    double p = 1.0;
    bool degenerate = false; // b + c == 0
};

/// Chi-squared formulation on the discordant counts; continuity-corrected by
/// default ((|b-c|-1)^2 / (b+c)).
McNemarResult mcnemar(long b, long c, bool continuity = true);

struct CochranResult {
    double q = 0.0;
    double p = 1.0;
    bool degenerate = false; // every row constant
    int df = 0;
};

/// rows = tasks x configurations of 0/1; needs >= 3 configurations.
CochranResult cochran_q(const std::vector<std::vector<int>>& rows);

struct ChiSquarePhiResult {
    double chi2 = 0.0;
    double p = 1.0;
    double phi = 0.0;
    bool phi_defined = false;
    bool degenerate = false; // a marginal is zero
};

/// Pearson chi-squared on the 2x2 table (a b / c d) plus the signed phi
/// coefficient (ad - bc) / sqrt of the marginal product.
ChiSquarePhiResult chi_square_phi(long a, long b, long c, long d);

struct SmellFreeCount {
    int count = 0;
    double percent = 0.0;
};

/// Reports whose mean score is >= 3 on every listed component. An empty
/// component set is vacuously satisfied by every report.
SmellFreeCount count_smell_free(std::span<const jury::SmellReport> reports,
                                std::span<const rubric::RubricComponent> components);

double median(std::vector<double> values); // throws on empty

} // namespace tooldesc::stats
