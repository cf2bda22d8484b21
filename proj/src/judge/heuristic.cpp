#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "tooldesc/judge/judge.hpp"
#include "tooldesc/text.hpp"

// Rule-based scoring used as the offline jury backend. The rules approximate
// the rubric descriptors with surface cues; they are a testing instrument,
// not a measurement claim.

namespace tooldesc::judge {

namespace {

using rubric::LikertScore;
using rubric::RubricComponent;

int length_completeness(const std::string& desc) {
    if (text::trim(desc).empty()) return 1;
    const int sentences = text::sentence_count(desc);
    if (sentences == 0) return 1; // unterminated fragment
    if (sentences == 1) return text::word_count(desc) <= 5 ? 1 : 2;
    if (sentences == 2) return 3;
    if (sentences == 3) return 4;
    return 5;
}

int parameter_explanation(const std::string& desc, const Json& schema) {
    const auto props = mcp::schema_property_names(schema);
    if (props.empty()) return 3; // nothing to explain
    int mentioned = 0;
    for (const auto& p : props)
        if (text::contains_word(desc, p)) ++mentioned;
    if (mentioned == 0) return 1;
    const double fraction = static_cast<double>(mentioned) / static_cast<double>(props.size());
    const int scaled = 1 + static_cast<int>(std::lround(4.0 * fraction));
    return std::max(2, std::min(5, scaled));
}

int guidelines(const std::string& desc) {
    if (text::trim(desc).empty()) return 1;
    const bool activation = text::icontains(desc, "when to use") || text::icontains(desc, "use when") ||
                            text::icontains(desc, "use this") || text::icontains(desc, "when you") ||
                            text::icontains(desc, "best used") || text::icontains(desc, "use only") ||
                            text::icontains(desc, "intended for");
    const bool operational = text::icontains(desc, "you should") || text::icontains(desc, "do not use") ||
                             text::icontains(desc, "don't use") || text::icontains(desc, "should be used") ||
                             text::icontains(desc, "avoid using");
    const bool section = text::icontains(desc, "when to use") || text::icontains(desc, "guidelines:");
    const int cues = (activation ? 1 : 0) + (operational ? 1 : 0) + (section ? 1 : 0);
    if (cues == 0) return 2;
    if (cues == 1) return 3;
    if (cues == 2) return 4;
    return 5;
}

int limitations(const std::string& desc) {
    if (text::trim(desc).empty()) return 1;
    int cues = 0;
    if (text::contains_word(desc, "only")) ++cues;
    if (text::contains_word(desc, "not") || text::contains_word(desc, "cannot")) ++cues;
    if (text::contains_word(desc, "limit", /*prefix=*/true)) ++cues;
    if (text::contains_word(desc, "maximum") || text::contains_word(desc, "max")) ++cues;
    if (cues == 0) return 1;
    if (cues == 1) return 3;
    if (cues == 2) return 4;
    return 5;
}

int purpose(const std::string& desc) {
    if (text::trim(desc).empty()) return 1;
    const bool returns_described =
        text::contains_word(desc, "return", true) || text::contains_word(desc, "output", true) ||
        text::contains_word(desc, "respond", true) || text::contains_word(desc, "provid", true) ||
        text::contains_word(desc, "produc", true) || text::contains_word(desc, "yield", true);
    const bool behavior_described =
        text::contains_word(desc, "support", true) || text::contains_word(desc, "perform", true) ||
        text::contains_word(desc, "handle", true) || text::contains_word(desc, "execut", true) ||
        text::contains_word(desc, "process", true) || text::contains_word(desc, "allow", true) ||
        text::contains_word(desc, "each") || text::contains_word(desc, "can") ||
        text::icontains(desc, "behavior");
    return 3 + (returns_described ? 1 : 0) + (behavior_described ? 1 : 0);
}

struct ExampleSplit {
    size_t example_chars = 0;
    size_t prose_chars = 0;
    bool inline_markers = false;
};

bool is_section_header(const std::string& trimmed, std::string& name_out) {
    if (trimmed.size() < 2 || trimmed.back() != ':') return false;
    const std::string head = trimmed.substr(0, trimmed.size() - 1);
    if (head.empty() || !std::isalpha(static_cast<unsigned char>(head.front()))) return false;
    for (char c : head)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '&' || c == '/'))
            return false;
    name_out = text::to_lower(head);
    return true;
}

ExampleSplit split_examples(const std::string& desc) {
    ExampleSplit out;
    out.inline_markers = text::icontains(desc, "e.g.") || text::icontains(desc, "for example") ||
                         text::icontains(desc, "for instance");
    bool in_examples = false;
    for (const auto& line : text::split(desc, '\n')) {
        const std::string trimmed = text::trim(line);
        std::string section;
        if (is_section_header(trimmed, section)) {
            in_examples = section.rfind("example", 0) == 0;
            continue;
        }
        (in_examples ? out.example_chars : out.prose_chars) += trimmed.size();
    }
    return out;
}

int examples_balance(const std::string& desc) {
    if (text::trim(desc).empty()) return 1;
    const ExampleSplit s = split_examples(desc);
    if (s.example_chars == 0) return s.inline_markers ? 5 : 3;
    const double ratio =
        static_cast<double>(s.example_chars) / static_cast<double>(s.example_chars + s.prose_chars);
    if (ratio <= 0.25) return 5;
    if (ratio <= 0.45) return 4;
    if (ratio <= 0.60) return 3;
    if (ratio <= 0.85) return 2;
    return 1;
}

} // namespace

rubric::JudgeVerdict heuristic_verdict(const mcp::ToolDescriptor& tool) {
    const std::string& d = tool.description;
    rubric::JudgeVerdict v;
    score_of(v.scores, RubricComponent::Purpose) = LikertScore{purpose(d)};
    score_of(v.scores, RubricComponent::Guidelines) = LikertScore{guidelines(d)};
    score_of(v.scores, RubricComponent::Limitations) = LikertScore{limitations(d)};
    score_of(v.scores, RubricComponent::ParameterExplanation) =
        LikertScore{parameter_explanation(d, tool.input_schema)};
    score_of(v.scores, RubricComponent::ExamplesBalance) = LikertScore{examples_balance(d)};
    score_of(v.scores, RubricComponent::LengthCompleteness) = LikertScore{length_completeness(d)};
    v.label = rubric::implied_label(v.scores);
    v.reason = "Rule-based assessment of surface cues in the description.";
    for (auto c : rubric::kAllComponents)
        if (score_of(v.scores, c).value <= LikertScore::kMinimumViable) v.improvement_needed.push_back(c);
    return v;
}

} // namespace tooldesc::judge
