#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tooldesc/judge/judge.hpp"
#include "tooldesc/mcp/types.hpp"
#include "tooldesc/rubric/rubric.hpp"

namespace tooldesc::jury {

/// Description smells, one per rubric component.
enum class SmellKind {
    UnclearPurpose = 0,
    MissingUsageGuidance,
    UnstatedLimitation,
    OpaqueParameters,
    ExemplarIssues,
    UnderspecifiedOrIncomplete,
};

SmellKind smell_of(rubric::RubricComponent c);
rubric::RubricComponent component_of(SmellKind s);
const char* smell_name(SmellKind s);

/// One component's scores across the jury. Sums stay integral so the strict
/// mean < 3 comparison is exact (8/3 is never pre-rounded).
struct ComponentScoreColumn {
    std::vector<std::optional<int>> per_judge; // aligned with the jury order; nullopt = judge failed
    long sum = 0;
    int n = 0;

    double mean() const { return n ? static_cast<double>(sum) / n : 0.0; }
    std::string mean_rational() const;
    bool smelly() const { return n > 0 && sum < 3L * n; }
};

struct SmellReport {
    mcp::ToolDescriptor tool;
    std::array<ComponentScoreColumn, rubric::kComponentCount> columns{};
    std::set<SmellKind> smells;
    int jury_size = 0;
    bool degraded = false; // at least one judge failed; means cover the rest
    std::vector<std::optional<rubric::JudgeVerdict>> verdicts;

    const ComponentScoreColumn& column(rubric::RubricComponent c) const {
        return columns[static_cast<size_t>(c)];
    }
    Json to_json() const;
};

/// Components whose arithmetic mean is strictly below 3, mapped to smells.
/// Throws std::invalid_argument when any component's list is empty.
std::set<SmellKind> detect_smells(
    const std::map<rubric::RubricComponent, std::vector<rubric::LikertScore>>& scores);

/// Run every judge on the same prompt for one tool. A failing judge leaves its
/// column missing and marks the report degraded; when every judge fails the
/// tool scores as an error and the caller moves on.
Result<SmellReport> score_tool(const mcp::ToolDescriptor& tool,
                               const std::vector<judge::JudgeSpec>& judges);

struct IccResult {
    double value = 0.0;
    bool degenerate = false; // all cells equal; value pinned to 1.0
};

/// ICC(2,1): two-way random effects, absolute agreement, single rater.
/// ratings is subjects x raters with no missing cells; requires n >= 2 and
/// k >= 2 (std::invalid_argument otherwise).
IccResult icc_2_1(const std::vector<std::vector<double>>& ratings);

/// Mean over paired label-sets of |A∩B| / |A∪B|; an empty-vs-empty pair
/// counts as 1.0. Throws std::invalid_argument on length mismatch or no pairs.
double mean_jaccard(const std::vector<std::set<std::string>>& a,
                    const std::vector<std::set<std::string>>& b);

struct AgreementSummary {
    std::map<rubric::RubricComponent, IccResult> icc; // empty when < 2 complete reports
    std::optional<double> jaccard;                    // mean over judge pairs and tools
    int complete_reports = 0;
    int jury_size = 0;
    Json to_json() const;
};

/// Inter-judge agreement over the complete (non-degraded) reports of a scan.
/// The Jaccard term compares, per judge pair and tool, the sets of components
/// each judge scored below the viability threshold.
AgreementSummary summarize_agreement(const std::vector<SmellReport>& reports);

} // namespace tooldesc::jury
