#include "tooldesc/jury/jury.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

namespace tooldesc::jury {

using rubric::RubricComponent;

SmellKind smell_of(RubricComponent c) {
    switch (c) {
    case RubricComponent::Purpose: return SmellKind::UnclearPurpose;
    case RubricComponent::Guidelines: return SmellKind::MissingUsageGuidance;
    case RubricComponent::Limitations: return SmellKind::UnstatedLimitation;
    case RubricComponent::ParameterExplanation: return SmellKind::OpaqueParameters;
    case RubricComponent::ExamplesBalance: return SmellKind::ExemplarIssues;
    case RubricComponent::LengthCompleteness: return SmellKind::UnderspecifiedOrIncomplete;
    }
    throw std::logic_error("unreachable");
}

RubricComponent component_of(SmellKind s) {
    switch (s) {
    case SmellKind::UnclearPurpose: return RubricComponent::Purpose;
    case SmellKind::MissingUsageGuidance: return RubricComponent::Guidelines;
    case SmellKind::UnstatedLimitation: return RubricComponent::Limitations;
    case SmellKind::OpaqueParameters: return RubricComponent::ParameterExplanation;
    case SmellKind::ExemplarIssues: return RubricComponent::ExamplesBalance;
    case SmellKind::UnderspecifiedOrIncomplete: return RubricComponent::LengthCompleteness;
    }
    throw std::logic_error("unreachable");
}

const char* smell_name(SmellKind s) {
    switch (s) {
    case SmellKind::UnclearPurpose: return "Unclear Purpose";
    case SmellKind::MissingUsageGuidance: return "Missing Usage Guidance";
    case SmellKind::UnstatedLimitation: return "Unstated Limitation";
    case SmellKind::OpaqueParameters: return "Opaque Parameters";
    case SmellKind::ExemplarIssues: return "Exemplar Issues";
    case SmellKind::UnderspecifiedOrIncomplete: return "Underspecified or Incomplete";
    }
    throw std::logic_error("unreachable");
}

std::string ComponentScoreColumn::mean_rational() const {
    if (n == 0) return "0";
    long g = std::gcd(sum, static_cast<long>(n));
    long num = sum / g, den = n / g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::set<SmellKind> detect_smells(
    const std::map<RubricComponent, std::vector<rubric::LikertScore>>& scores) {
    std::set<SmellKind> out;
    for (const auto& [component, list] : scores) {
        if (list.empty())
            throw std::invalid_argument(std::string("detect_smells: empty score list for ") +
                                        rubric::component_name(component));
        long sum = 0;
        for (const auto& s : list) sum += s.value;
        if (sum < 3L * static_cast<long>(list.size())) out.insert(smell_of(component));
    }
    return out;
}

Json SmellReport::to_json() const {
    Json scores = Json::object();
    for (auto c : rubric::kAllComponents) {
        const auto& col = column(c);
        Json per_judge = Json::array();
        for (const auto& s : col.per_judge) {
            if (s)
                per_judge.push_back(*s);
            else
                per_judge.push_back(nullptr);
        }
        scores[rubric::component_key(c)] = Json{{"per_judge", per_judge},
                                                {"mean", col.mean()},
                                                {"mean_rational", col.mean_rational()}};
    }
    Json smell_list = Json::array();
    for (auto s : smells) smell_list.push_back(smell_name(s));
    Json labels = Json::array();
    for (const auto& v : verdicts) {
        if (v)
            labels.push_back(v->label == rubric::VerdictLabel::Good ? "Good" : "Bad");
        else
            labels.push_back(nullptr);
    }
    return Json{{"server", tool.server}, {"tool", tool.name},     {"scores", scores},
                {"smells", smell_list},  {"jury_size", jury_size}, {"degraded", degraded},
                {"labels", labels}};
}

Result<SmellReport> score_tool(const mcp::ToolDescriptor& tool,
                               const std::vector<judge::JudgeSpec>& judges) {
    if (judges.empty()) return make_error(ErrorCode::Config, "score_tool requires at least one judge");

    const std::string prompt = rubric::build_scoring_prompt(tool);

    std::vector<std::future<Result<rubric::JudgeVerdict>>> futures;
    futures.reserve(judges.size());
    for (const auto& spec : judges)
        futures.push_back(std::async(std::launch::async, [&spec, &prompt] { return judge::judge(spec, prompt); }));

    SmellReport report;
    report.tool = tool;
    report.jury_size = static_cast<int>(judges.size());
    report.verdicts.resize(judges.size());
    for (auto& col : report.columns) col.per_judge.resize(judges.size());

    Json failures = Json::array();
    int ok_count = 0;
    for (size_t i = 0; i < futures.size(); ++i) {
        auto verdict = futures[i].get();
        if (!verdict) {
            report.degraded = true;
            failures.push_back(Json{{"judge", static_cast<int>(i)},
                                    {"error", verdict.error().to_string()}});
            continue;
        }
        ++ok_count;
        report.verdicts[i] = verdict.value();
        for (auto c : rubric::kAllComponents) {
            auto& col = report.columns[static_cast<size_t>(c)];
            const int value = score_of(verdict.value().scores, c).value;
            col.per_judge[i] = value;
            col.sum += value;
            col.n += 1;
        }
    }

    if (ok_count == 0)
        return make_error(ErrorCode::Judge, "every judge failed for tool '" + tool.name + "'",
                          Json{{"failures", failures}});

    for (auto c : rubric::kAllComponents)
        if (report.column(c).smelly()) report.smells.insert(smell_of(c));
    return report;
}

IccResult icc_2_1(const std::vector<std::vector<double>>& ratings) {
    const size_t n = ratings.size();
    if (n < 2) throw std::invalid_argument("icc_2_1: needs at least 2 subjects");
    const size_t k = ratings.front().size();
    if (k < 2) throw std::invalid_argument("icc_2_1: needs at least 2 raters");
    for (const auto& row : ratings)
        if (row.size() != k) throw std::invalid_argument("icc_2_1: ragged ratings matrix");

    const double nk = static_cast<double>(n * k);
    double grand = 0.0;
    for (const auto& row : ratings)
        for (double x : row) grand += x;
    grand /= nk;

    std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            row_mean[i] += ratings[i][j];
            col_mean[j] += ratings[i][j];
        }
        row_mean[i] /= static_cast<double>(k);
    }
    for (size_t j = 0; j < k; ++j) col_mean[j] /= static_cast<double>(n);

    double sst = 0.0, ssr = 0.0, ssc = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) sst += (ratings[i][j] - grand) * (ratings[i][j] - grand);
    for (size_t i = 0; i < n; ++i) ssr += (row_mean[i] - grand) * (row_mean[i] - grand);
    ssr *= static_cast<double>(k);
    for (size_t j = 0; j < k; ++j) ssc += (col_mean[j] - grand) * (col_mean[j] - grand);
    ssc *= static_cast<double>(n);
    const double sse = std::max(0.0, sst - ssr - ssc);

    if (sst <= 1e-12) return IccResult{1.0, true}; // all cells equal

    const double msr = ssr / static_cast<double>(n - 1);
    const double msc = ssc / static_cast<double>(k - 1);
    const double mse = sse / static_cast<double>((n - 1) * (k - 1));

    const double numer = msr - mse;
    const double denom = msr + static_cast<double>(k - 1) * mse +
                         (static_cast<double>(k) / static_cast<double>(n)) * (msc - mse);

    double value;
    if (denom == 0.0)
        value = numer > 0.0 ? 1.0 : (numer < 0.0 ? -1.0 : 0.0);
    else
        value = numer / denom;
    // The estimator can stray past the theoretical range on tiny inputs.
    value = std::clamp(value, -1.0, 1.0);
    return IccResult{value, false};
}

double mean_jaccard(const std::vector<std::set<std::string>>& a,
                    const std::vector<std::set<std::string>>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("mean_jaccard: length mismatch");
    if (a.empty()) throw std::invalid_argument("mean_jaccard: needs at least one pair");
    double total = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].empty() && b[i].empty()) {
            total += 1.0;
            continue;
        }
        std::vector<std::string> inter;
        std::set_intersection(a[i].begin(), a[i].end(), b[i].begin(), b[i].end(),
                              std::back_inserter(inter));
        std::vector<std::string> uni;
        std::set_union(a[i].begin(), a[i].end(), b[i].begin(), b[i].end(), std::back_inserter(uni));
        total += static_cast<double>(inter.size()) / static_cast<double>(uni.size());
    }
    return total / static_cast<double>(a.size());
}

Json AgreementSummary::to_json() const {
    Json icc_json = Json::object();
    for (const auto& [component, result] : icc)
        icc_json[rubric::component_key(component)] =
            Json{{"value", result.value}, {"degenerate", result.degenerate}};
    Json j = {{"icc", icc_json},
              {"complete_reports", complete_reports},
              {"jury_size", jury_size}};
    j["mean_jaccard"] = jaccard ? Json(*jaccard) : Json(nullptr);
    return j;
}

AgreementSummary summarize_agreement(const std::vector<SmellReport>& reports) {
    AgreementSummary out;

    std::vector<const SmellReport*> complete;
    for (const auto& r : reports)
        if (!r.degraded && r.jury_size >= 2) complete.push_back(&r);
    out.complete_reports = static_cast<int>(complete.size());
    if (complete.empty()) return out;

    const int k = complete.front()->jury_size;
    for (const auto* r : complete)
        if (r->jury_size != k) return out; // mixed jury sizes: no pooled agreement
    out.jury_size = k;
    if (complete.size() < 2) return out;

    for (auto c : rubric::kAllComponents) {
        std::vector<std::vector<double>> matrix;
        matrix.reserve(complete.size());
        for (const auto* r : complete) {
            std::vector<double> row;
            for (const auto& s : r->column(c).per_judge) row.push_back(static_cast<double>(*s));
            matrix.push_back(std::move(row));
        }
        out.icc.emplace(c, icc_2_1(matrix));
    }

    // Per judge, per tool: the set of components it scored below viability.
    std::vector<std::vector<std::set<std::string>>> labelings(static_cast<size_t>(k));
    for (const auto* r : complete) {
        for (int j = 0; j < k; ++j) {
            std::set<std::string> below;
            for (auto c : rubric::kAllComponents)
                if (*r->column(c).per_judge[static_cast<size_t>(j)] <
                    rubric::LikertScore::kMinimumViable)
                    below.insert(rubric::component_key(c));
            labelings[static_cast<size_t>(j)].push_back(std::move(below));
        }
    }
    double total = 0.0;
    int pairs = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            total += mean_jaccard(labelings[static_cast<size_t>(i)], labelings[static_cast<size_t>(j)]);
            ++pairs;
        }
    if (pairs > 0) out.jaccard = total / pairs;
    return out;
}

} // namespace tooldesc::jury
