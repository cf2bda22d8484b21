#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tooldesc/json.hpp"
#include "tooldesc/mcp/types.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::rubric {

/// The six quality dimensions of a tool description. The set is closed.
enum class RubricComponent {
    Purpose = 0,
    Guidelines,
    Limitations,
    ParameterExplanation,
    ExamplesBalance,
    LengthCompleteness,
};

inline constexpr int kComponentCount = 6;
inline constexpr std::array<RubricComponent, kComponentCount> kAllComponents = {
    RubricComponent::Purpose,          RubricComponent::Guidelines,
    RubricComponent::Limitations,      RubricComponent::ParameterExplanation,
    RubricComponent::ExamplesBalance,  RubricComponent::LengthCompleteness,
};

/// Canonical identifier, also the JSON key inside verdicts ("purpose",
/// "usage_guideline", ...).
const char* component_key(RubricComponent c);
/// Human-facing name ("Purpose", "Guidelines", ...).
const char* component_name(RubricComponent c);
/// Heading used in the scoring rubric ("Purpose (What the tool does)", ...).
const char* component_heading(RubricComponent c);
std::optional<RubricComponent> component_from_key(const std::string& key);

/// Ordinal score on the 5-point scale.
struct LikertScore {
    int value = 1;

    /// Score at or above which a component counts as minimally viable.
    static constexpr int kMinimumViable = 3;

    static Result<LikertScore> make(int v) {
        if (v < 1 || v > 5) return make_error(ErrorCode::Validation, "score out of range [1,5]");
        return LikertScore{v};
    }
    bool operator==(const LikertScore&) const = default;
};

using ComponentScores = std::array<LikertScore, kComponentCount>;

inline LikertScore& score_of(ComponentScores& s, RubricComponent c) { return s[static_cast<size_t>(c)]; }
inline const LikertScore& score_of(const ComponentScores& s, RubricComponent c) {
    return s[static_cast<size_t>(c)];
}

/// Five performance descriptors (index 0 = score 5 ... index 4 = score 1),
/// matching the numbered rubric shipped in the scoring prompt.
const std::array<std::string, 5>& descriptors_for(RubricComponent c);

/// Rubric rendered as the numbered six-section list embedded in prompts.
std::string render_rubric_text();

enum class VerdictLabel { Good, Bad };

struct JudgeVerdict {
    ComponentScores scores{};
    VerdictLabel label = VerdictLabel::Bad;
    std::string reason;
    std::vector<RubricComponent> improvement_needed; // components scoring <= 3
    bool repaired_label = false; // set when the reply's label contradicted its scores

    int min_score() const;
    bool operator==(const JudgeVerdict&) const = default;
};

/// Label implied by the scores: Bad iff any component scores below 3.
VerdictLabel implied_label(const ComponentScores& scores);

/// Build the judge prompt for one tool. Pure: identical descriptor in,
/// identical bytes out. Empty descriptions are scoreable and appear as an
/// explicit empty field in the payload.
std::string build_scoring_prompt(const mcp::ToolDescriptor& tool);

/// Recover the tool payload embedded by build_scoring_prompt (and by the
/// augmentation prompts, which use the same fenced-block convention).
Result<Json> extract_tool_payload(const std::string& prompt);

/// Pull the first balanced JSON object out of a possibly prose-wrapped reply.
Result<Json> extract_json_object(const std::string& raw);

/// Parse a judge reply. Tolerates prose and markdown fences around the JSON
/// object; validates all six score keys and their 1-5 range; repairs an
/// inconsistent label to the score-implied one (flagging the repair).
Result<JudgeVerdict> parse_verdict(const std::string& raw);

Json serialize_verdict(const JudgeVerdict& v);

} // namespace tooldesc::rubric
