#include "tooldesc/rubric/rubric.hpp"

#include <algorithm>

#include "tooldesc/rubric/prompt_assets.hpp"
#include "tooldesc/text.hpp"

namespace tooldesc::rubric {

namespace {

struct ComponentInfo {
    const char* key;
    const char* name;
    const char* heading;
    std::array<std::string, 5> descriptors; // index 0 = score 5 ... index 4 = score 1
};

const std::array<ComponentInfo, kComponentCount>& component_table() {
    static const std::array<ComponentInfo, kComponentCount> table = {{
        {"purpose",
         "Purpose",
         "Purpose (What the tool does)",
         {"Clearly explains function, behavior, and return data with precise language.",
          "Explains function and behavior with minor ambiguity.",
          "Basic explanation present but lacks behavioral details.",
          "Vague or incomplete purpose statement.",
          "Purpose unclear or missing."}},
        {"usage_guideline",
         "Guidelines",
         "Usage Guidelines (When to use or not use)",
         {"Explicitly states appropriate use cases and when not to use; includes disambiguation if "
          "the tool name is ambiguous.",
          "States when to use with minimal guidance on when not to use.",
          "Implies usage context but lacks explicit boundaries.",
          "Usage context unclear or overly generic.",
          "No usage guidance provided."}},
        {"limitation",
         "Limitations",
         "Limitation (Caveats and boundaries)",
         {"Clearly states what the tool does not return, scope boundaries, and important constraints.",
          "Mentions main limitations but misses some edge cases.",
          "Vague or incomplete limitation statements.",
          "Minimal or implied limitations only.",
          "No limitations or caveats mentioned."}},
        {"parameter_explanation",
         "Parameter Explanation",
         "Parameter Explanation (Input clarity)",
         {"Every parameter is explained with type, meaning, behavioral effect, and required or "
          "default status.",
          "Most parameters are explained with minor omissions.",
          "Basic parameter information is present but lacks behavioral impact.",
          "Parameters are listed without meaningful explanation.",
          "Parameters are not explained or only provided in schema form."}},
        {"examples_balance",
         "Examples",
         "Examples vs. Description Balance",
         {"Description is self-sufficient; examples, if any, supplement rather than replace the "
          "explanation.",
          "Mostly descriptive with minor reliance on examples.",
          "Even mix of description and examples.",
          "Over-relies on examples with minimal prose.",
          "Only examples are provided with no descriptive explanation."}},
        {"length_completeness",
         "Length and Completeness",
         "Length and Completeness",
         {"Four or more sentences of substantive, well-structured prose covering all aspects.",
          "Three to four sentences with good coverage.",
          "Two to three sentences that are somewhat complete.",
          "One to two sentences that are too brief.",
          "Single phrase or fragment."}},
    }};
    return table;
}

const ComponentInfo& info(RubricComponent c) { return component_table()[static_cast<size_t>(c)]; }

/// Locate the first fenced ```json block at or after `from` and parse it.
Result<Json> parse_fenced_json(const std::string& s, size_t from);

} // namespace

const char* component_key(RubricComponent c) { return info(c).key; }
const char* component_name(RubricComponent c) { return info(c).name; }
const char* component_heading(RubricComponent c) { return info(c).heading; }

std::optional<RubricComponent> component_from_key(const std::string& key) {
    for (auto c : kAllComponents)
        if (key == component_key(c)) return c;
    return std::nullopt;
}

const std::array<std::string, 5>& descriptors_for(RubricComponent c) { return info(c).descriptors; }

std::string render_rubric_text() {
    std::string out;
    int n = 1;
    for (auto c : kAllComponents) {
        out += std::to_string(n++) + ". " + component_heading(c) + "\n";
        const auto& d = descriptors_for(c);
        for (int score = 5; score >= 1; --score)
            out += "   - " + std::to_string(score) + "/5: " + d[static_cast<size_t>(5 - score)] + "\n";
        out += "\n";
    }
    // drop trailing blank line
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

int JudgeVerdict::min_score() const {
    int m = 5;
    for (const auto& s : scores) m = std::min(m, s.value);
    return m;
}

VerdictLabel implied_label(const ComponentScores& scores) {
    for (const auto& s : scores)
        if (s.value < LikertScore::kMinimumViable) return VerdictLabel::Bad;
    return VerdictLabel::Good;
}

std::string build_scoring_prompt(const mcp::ToolDescriptor& tool) {
    Json payload = tool.to_json(); // always carries an explicit description field
    std::string prompt = assets::kScoringPromptTemplate;
    prompt = text::replace_all(std::move(prompt), "{rubric_text}", render_rubric_text());
    prompt = text::replace_all(std::move(prompt), "{tool_payload}", payload.dump(2));
    return prompt;
}

namespace {

Result<Json> parse_fenced_json(const std::string& s, size_t from) {
    size_t open = s.find("```json\n", from);
    if (open == std::string::npos)
        return make_error(ErrorCode::Parse, "no fenced json block found in prompt");
    size_t body = open + 8;
    size_t close = s.find("\n```", body);
    if (close == std::string::npos)
        return make_error(ErrorCode::Parse, "unterminated fenced json block in prompt");
    try {
        return Json::parse(s.substr(body, close - body));
    } catch (const Json::parse_error& e) {
        return make_error(ErrorCode::Parse, std::string("fenced block is not valid JSON: ") + e.what());
    }
}

} // namespace

Result<Json> extract_tool_payload(const std::string& prompt) { return parse_fenced_json(prompt, 0); }

Result<Json> extract_json_object(const std::string& raw) {
    // Prefer a fenced block when one exists.
    size_t fence = raw.find("```");
    if (fence != std::string::npos) {
        size_t start = raw.find('{', fence);
        if (start != std::string::npos) {
            int depth = 0;
            bool in_string = false;
            for (size_t i = start; i < raw.size(); ++i) {
                char ch = raw[i];
                if (in_string) {
                    if (ch == '\\')
                        ++i;
                    else if (ch == '"')
                        in_string = false;
                    continue;
                }
                if (ch == '"') in_string = true;
                else if (ch == '{') ++depth;
                else if (ch == '}') {
                    if (--depth == 0) {
                        try {
                            return Json::parse(raw.substr(start, i - start + 1));
                        } catch (const Json::parse_error&) {
                            break; // fall through to the whole-text scan
                        }
                    }
                }
            }
        }
    }
    size_t start = raw.find('{');
    while (start != std::string::npos) {
        int depth = 0;
        bool in_string = false;
        for (size_t i = start; i < raw.size(); ++i) {
            char ch = raw[i];
            if (in_string) {
                if (ch == '\\')
                    ++i;
                else if (ch == '"')
                    in_string = false;
                continue;
            }
            if (ch == '"') in_string = true;
            else if (ch == '{') ++depth;
            else if (ch == '}') {
                if (--depth == 0) {
                    try {
                        return Json::parse(raw.substr(start, i - start + 1));
                    } catch (const Json::parse_error&) {
                        i = raw.size(); // try the next opening brace
                    }
                }
            }
        }
        start = raw.find('{', start + 1);
    }
    return make_error(ErrorCode::Parse, "reply contains no parseable JSON object",
                      Json{{"raw", raw}});
}

Result<JudgeVerdict> parse_verdict(const std::string& raw) {
    auto parsed = extract_json_object(raw);
    if (!parsed) return parsed.error();
    const Json& j = parsed.value();

    if (!j.contains("scores") || !j["scores"].is_object())
        return make_error(ErrorCode::Parse, "verdict is missing the 'scores' object", Json{{"raw", raw}});

    JudgeVerdict v;
    const Json& scores = j["scores"];
    for (auto c : kAllComponents) {
        const char* key = component_key(c);
        if (!scores.contains(key))
            return make_error(ErrorCode::Parse, std::string("verdict is missing score '") + key + "'",
                              Json{{"raw", raw}, {"component", key}});
        const Json& s = scores[key];
        if (!s.is_number_integer())
            return make_error(ErrorCode::Parse, std::string("score '") + key + "' is not an integer",
                              Json{{"raw", raw}, {"component", key}});
        auto score = LikertScore::make(s.get<int>());
        if (!score)
            return make_error(ErrorCode::Parse,
                              std::string("score '") + key + "' is out of range [1,5]",
                              Json{{"raw", raw}, {"component", key}, {"value", s.get<int>()}});
        score_of(v.scores, c) = score.value();
    }

    v.reason = j.value("reason", "");

    const VerdictLabel implied = implied_label(v.scores);
    if (j.contains("label") && j["label"].is_string()) {
        const std::string label = j["label"].get<std::string>();
        if (label != "Good" && label != "Bad")
            return make_error(ErrorCode::Parse, "label must be 'Good' or 'Bad'", Json{{"raw", raw}});
        const VerdictLabel given = label == "Good" ? VerdictLabel::Good : VerdictLabel::Bad;
        v.label = implied;
        v.repaired_label = given != implied;
    } else {
        v.label = implied;
        v.repaired_label = false;
    }

    // improvement_needed is derived from the scores; replies may phrase it
    // freely, so it is canonicalized here.
    for (auto c : kAllComponents)
        if (score_of(v.scores, c).value <= LikertScore::kMinimumViable) v.improvement_needed.push_back(c);

    return v;
}

Json serialize_verdict(const JudgeVerdict& v) {
    Json scores = Json::object();
    for (auto c : kAllComponents) scores[component_key(c)] = score_of(v.scores, c).value;
    Json improvement = Json::array();
    for (auto c : v.improvement_needed) improvement.push_back(component_key(c));
    return Json{{"scores", scores},
                {"label", v.label == VerdictLabel::Good ? "Good" : "Bad"},
                {"reason", v.reason},
                {"improvement_needed", improvement}};
}

} // namespace tooldesc::rubric
