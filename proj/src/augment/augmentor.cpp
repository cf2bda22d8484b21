#include "tooldesc/augment/augmentor.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "tooldesc/clock.hpp"
#include "tooldesc/rubric/prompt_assets.hpp"
#include "tooldesc/rubric/rubric.hpp"
#include "tooldesc/text.hpp"

namespace tooldesc::augment {

Json DraftDescription::to_json() const {
    return Json{{"purpose", purpose},
                {"guidelines", guidelines},
                {"limitations", limitations},
                {"parameter_explanation", parameter_explanation},
                {"source_tool", source_tool},
                {"model_id", model_id}};
}

const char* outcome_name(TraceCall::Outcome o) {
    switch (o) {
    case TraceCall::Outcome::Success: return "success";
    case TraceCall::Outcome::Empty: return "empty";
    case TraceCall::Outcome::Error: return "error";
    }
    return "";
}

Json ExecutionTrace::to_json() const {
    Json calls_json = Json::array();
    for (const auto& c : calls)
        calls_json.push_back(Json{{"arguments", c.arguments},
                                  {"response", c.response},
                                  {"outcome", outcome_name(c.outcome)}});
    return Json{{"tool", tool}, {"task_prompt", task_prompt}, {"calls", calls_json}};
}

namespace {

Result<TraceCall::Outcome> parse_outcome(const std::string& s, const std::string& path) {
    if (s == "success") return TraceCall::Outcome::Success;
    if (s == "empty") return TraceCall::Outcome::Empty;
    if (s == "error") return TraceCall::Outcome::Error;
    return make_error(ErrorCode::Parse,
                      "unknown outcome '" + s + "' at " + path + " (expected success|empty|error)");
}

bool response_flags_error(const Json& response) {
    return response.is_object() && response.value("isError", false);
}

} // namespace

Result<TraceIngest> ingest_traces_text(const std::string& json_text, const std::string& origin) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        return make_error(ErrorCode::Parse,
                          origin + ": malformed JSON at byte offset " + std::to_string(e.byte - 1),
                          Json{{"offset", e.byte - 1}});
    }
    if (!root.is_array())
        return make_error(ErrorCode::Parse, origin + ": $ must be an array of traces");

    TraceIngest out;
    for (size_t i = 0; i < root.size(); ++i) {
        const std::string path = "$[" + std::to_string(i) + "]";
        const Json& t = root[i];
        if (!t.is_object()) return make_error(ErrorCode::Parse, origin + ": " + path + " must be an object");
        ExecutionTrace trace;
        if (!t.contains("tool") || !t["tool"].is_string() || t["tool"].get<std::string>().empty())
            return make_error(ErrorCode::Parse, origin + ": " + path + ".tool must be a non-empty string");
        trace.tool = t["tool"].get<std::string>();
        trace.task_prompt = t.value("task_prompt", "");
        if (!t.contains("calls") || !t["calls"].is_array() || t["calls"].empty())
            return make_error(ErrorCode::Parse,
                              origin + ": " + path + ".calls must be a non-empty array");
        for (size_t j = 0; j < t["calls"].size(); ++j) {
            const std::string cpath = path + ".calls[" + std::to_string(j) + "]";
            const Json& c = t["calls"][j];
            if (!c.is_object())
                return make_error(ErrorCode::Parse, origin + ": " + cpath + " must be an object");
            TraceCall call;
            if (c.contains("arguments")) call.arguments = c["arguments"];
            if (c.contains("response")) call.response = c["response"];
            if (!c.contains("outcome") || !c["outcome"].is_string())
                return make_error(ErrorCode::Parse, origin + ": " + cpath + ".outcome is required");
            auto outcome = parse_outcome(c["outcome"].get<std::string>(), origin + ": " + cpath);
            if (!outcome) return outcome.error();
            call.outcome = outcome.value();
            const bool flagged = response_flags_error(call.response);
            if (flagged != (call.outcome == TraceCall::Outcome::Error))
                return make_error(ErrorCode::Validation,
                                  origin + ": " + cpath +
                                      ": outcome disagrees with the response isError flag");
            trace.calls.push_back(std::move(call));
        }
        out.traces.push_back(std::move(trace));
    }

    for (const auto& [tool, traces] : group_by_tool(out.traces)) {
        bool has_success = false, has_failure = false;
        for (const auto& trace : traces)
            for (const auto& call : trace.calls) {
                if (call.outcome == TraceCall::Outcome::Success) has_success = true;
                else has_failure = true;
            }
        if (!has_success)
            out.warnings.push_back("tool '" + tool + "': no successful trace recorded");
        if (!has_failure)
            out.warnings.push_back("tool '" + tool + "': no failing trace recorded");
    }
    return out;
}

Result<TraceIngest> ingest_traces(const std::string& path) {
    std::ifstream in(path);
    if (!in) return make_error(ErrorCode::Storage, "cannot open traces file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_traces_text(buf.str(), path);
}

std::map<std::string, std::vector<ExecutionTrace>> group_by_tool(
    const std::vector<ExecutionTrace>& traces) {
    std::map<std::string, std::vector<ExecutionTrace>> out;
    for (const auto& t : traces) out[t.tool].push_back(t);
    return out;
}

namespace {

std::string build_init_prompt(const mcp::ToolDescriptor& tool) {
    std::string prompt = rubric::assets::kInitAugmentPromptTemplate;
    prompt = text::replace_all(std::move(prompt), "{rubric_text}", rubric::render_rubric_text());
    prompt = text::replace_all(std::move(prompt), "{tool_payload}", tool.to_json().dump(2));
    return prompt;
}

std::string build_consolidate_prompt(const DraftDescription& draft,
                                     const std::vector<ExecutionTrace>& traces) {
    Json traces_json = Json::array();
    for (const auto& t : traces) traces_json.push_back(t.to_json());
    std::string prompt = rubric::assets::kConsolidatePromptTemplate;
    prompt = text::replace_all(std::move(prompt), "{draft}", draft.to_json().dump(2));
    prompt = text::replace_all(std::move(prompt), "{traces}", traces_json.dump(2));
    return prompt;
}

Result<Json> reply_object_with_fields(const std::string& reply,
                                      const std::vector<std::string>& fields,
                                      std::string& missing_out) {
    auto obj = rubric::extract_json_object(reply);
    if (!obj) return obj.error();
    for (const auto& f : fields) {
        if (!obj.value().contains(f) || !obj.value()[f].is_string()) {
            missing_out = f;
            return make_error(ErrorCode::Parse, "reply is missing the string field '" + f + "'");
        }
    }
    return obj;
}

} // namespace

Result<DraftDescription> init_augment(const mcp::ToolDescriptor& tool, const judge::JudgeSpec& model) {
    if (model.kind != judge::JudgeKind::Remote)
        return make_error(ErrorCode::Config, "init_augment requires a remote model spec");

    const std::string prompt = build_init_prompt(tool);
    const std::vector<std::string> fields = {"purpose", "guidelines", "limitations",
                                             "parameter_explanation"};

    std::string corrective;
    Json raw_replies = Json::array();
    for (int attempt = 1; attempt <= model.max_attempts; ++attempt) {
        std::string user = "Rewrite the description now. Reply with the JSON object only.";
        if (!corrective.empty()) user += "\n\n" + corrective;
        auto reply = judge::chat_complete(model, prompt, user);
        if (!reply) return reply.error();
        raw_replies.push_back(reply.value());

        std::string missing;
        auto obj = reply_object_with_fields(reply.value(), fields, missing);
        if (obj) {
            DraftDescription d;
            d.purpose = obj.value()["purpose"].get<std::string>();
            d.guidelines = obj.value()["guidelines"].get<std::string>();
            d.limitations = obj.value()["limitations"].get<std::string>();
            d.parameter_explanation = obj.value()["parameter_explanation"].get<std::string>();
            d.source_tool = tool.server + "/" + tool.name;
            d.model_id = model.model_id;
            if (d.purpose.empty()) {
                corrective = "The purpose field was empty. Populate all four fields.";
                continue;
            }
            return d;
        }
        corrective = "Your previous reply could not be used: " + obj.error().message +
                     ". Reply again with exactly the JSON object requested.";
    }
    return make_error(ErrorCode::Stage,
                      "initial augmentation failed for '" + tool.name + "' after " +
                          std::to_string(model.max_attempts) + " attempts; original kept",
                      Json{{"replies", raw_replies}});
}

Result<AugmentedDescription> consolidate(const DraftDescription& draft,
                                         const std::vector<ExecutionTrace>& traces,
                                         const judge::JudgeSpec& model) {
    if (model.kind != judge::JudgeKind::Remote)
        return make_error(ErrorCode::Config, "consolidate requires a remote model spec");

    const std::string prompt = build_consolidate_prompt(draft, traces);
    const std::vector<std::string> fields = {"purpose", "guidelines", "limitations",
                                             "parameter_explanation", "examples"};
    const std::string tool_name =
        draft.source_tool.substr(draft.source_tool.find('/') + 1);

    std::string corrective;
    Json raw_replies = Json::array();
    for (int attempt = 1; attempt <= model.max_attempts; ++attempt) {
        std::string user = "Produce the final five-field object now. Reply with the JSON object only.";
        if (!corrective.empty()) user += "\n\n" + corrective;
        auto reply = judge::chat_complete(model, prompt, user);
        if (!reply) return reply.error();
        raw_replies.push_back(reply.value());

        std::string missing;
        auto obj = reply_object_with_fields(reply.value(), fields, missing);
        if (!obj) {
            corrective = "Your previous reply could not be used: " + obj.error().message +
                         ". Reply again with exactly the JSON object requested.";
            continue;
        }

        AugmentedDescription a;
        a.purpose = obj.value()["purpose"].get<std::string>();
        a.guidelines = obj.value()["guidelines"].get<std::string>();
        a.limitations = obj.value()["limitations"].get<std::string>();
        a.parameter_explanation = obj.value()["parameter_explanation"].get<std::string>();
        a.examples = obj.value()["examples"].get<std::string>();
        a.examples_ungrounded = traces.empty();
        a.provenance = {draft.source_tool, "consolidated", model.model_id, iso8601_utc_now()};

        if (!traces.empty()) {
            auto loose = ungrounded_example_tokens(a.examples, tool_name, traces);
            if (!loose.empty()) {
                corrective = "Your examples referenced values that do not appear in the traces: " +
                             text::join(loose, ", ") +
                             ". Only use argument values and outcomes from the traces.";
                continue;
            }
        }
        return a;
    }
    return make_error(ErrorCode::Stage,
                      "consolidation failed for '" + draft.source_tool + "' after " +
                          std::to_string(model.max_attempts) + " attempts",
                      Json{{"replies", raw_replies}});
}

namespace {

void collect_scalars(const Json& value, std::set<std::string>& out) {
    if (value.is_string()) {
        out.insert(value.get<std::string>());
    } else if (value.is_number() || value.is_boolean()) {
        out.insert(value.dump());
    } else if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it) {
            out.insert(it.key()); // argument names are fair game in examples
            collect_scalars(it.value(), out);
        }
    } else if (value.is_array()) {
        for (const auto& v : value) collect_scalars(v, out);
    }
}

/// Quoted spans and standalone number literals in free text.
std::vector<std::string> candidate_tokens(const std::string& s) {
    std::vector<std::string> out;
    for (size_t i = 0; i < s.size(); ++i) {
        const char q = s[i];
        if (q == '"' || q == '\'' || q == '`') {
            const size_t close = s.find(q, i + 1);
            if (close == std::string::npos) break;
            out.push_back(s.substr(i + 1, close - i - 1));
            i = close;
        } else if (std::isdigit(static_cast<unsigned char>(q)) &&
                   (i == 0 || (!std::isalnum(static_cast<unsigned char>(s[i - 1])) &&
                               s[i - 1] != '_' && s[i - 1] != '.' && s[i - 1] != '-'))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' ||
                                    s[j] == '-'))
                ++j;
            std::string tok = s.substr(i, j - i);
            while (!tok.empty() && (tok.back() == '.' || tok.back() == '-')) tok.pop_back();
            out.push_back(tok);
            i = j - 1;
        }
    }
    return out;
}

} // namespace

std::vector<std::string> ungrounded_example_tokens(const std::string& examples,
                                                   const std::string& tool_name,
                                                   const std::vector<ExecutionTrace>& traces) {
    std::set<std::string> allowed;
    allowed.insert(tool_name);
    allowed.insert("success");
    allowed.insert("empty");
    allowed.insert("error");
    for (const auto& t : traces)
        for (const auto& c : t.calls) collect_scalars(c.arguments, allowed);

    std::vector<std::string> loose;
    for (const auto& token : candidate_tokens(examples)) {
        if (token.size() < 3) continue; // too short to be meaningful evidence
        bool grounded = false;
        for (const auto& a : allowed) {
            if (token == a || (!a.empty() && a.find(token) != std::string::npos)) {
                grounded = true;
                break;
            }
        }
        if (!grounded) loose.push_back(token);
    }
    return loose;
}

const char* violation_kind_name(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::MissingParameter: return "missing_parameter";
    case Violation::Kind::UnknownParameter: return "unknown_parameter";
    case Violation::Kind::UngroundedExample: return "ungrounded_example";
    case Violation::Kind::EmptyField: return "empty_field";
    }
    return "";
}

Json ValidationReport::to_json() const {
    Json v = Json::array();
    for (const auto& violation : violations)
        v.push_back(Json{{"kind", violation_kind_name(violation.kind)}, {"detail", violation.detail}});
    return Json{{"ok", ok()}, {"violations", v}};
}

namespace {

bool looks_like_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

/// Parameter names asserted by the text: backticked identifiers plus heads of
/// "- name (type):" style list items.
std::set<std::string> claimed_parameters(const std::string& s) {
    std::set<std::string> out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '`') continue;
        const size_t close = s.find('`', i + 1);
        if (close == std::string::npos) break;
        const std::string token = s.substr(i + 1, close - i - 1);
        if (looks_like_identifier(token)) out.insert(token);
        i = close;
    }
    for (const auto& line : text::split(s, '\n')) {
        std::string t = text::trim(line);
        if (t.rfind("- ", 0) == 0 || t.rfind("* ", 0) == 0) {
            t = text::trim(t.substr(2));
            size_t end = 0;
            while (end < t.size() &&
                   (std::isalnum(static_cast<unsigned char>(t[end])) || t[end] == '_'))
                ++end;
            const std::string head = t.substr(0, end);
            const std::string rest = text::trim(t.substr(end));
            if (looks_like_identifier(head) &&
                (rest.rfind('(', 0) == 0 || rest.rfind(':', 0) == 0))
                out.insert(head);
        }
    }
    return out;
}

} // namespace

ValidationReport validate_augmented(const mcp::ToolDescriptor& original,
                                    const AugmentedDescription& augmented,
                                    const std::vector<ExecutionTrace>* traces) {
    ValidationReport report;
    const auto props = mcp::schema_property_names(original.input_schema);

    for (const auto& p : props)
        if (!text::contains_word(augmented.parameter_explanation, p))
            report.violations.push_back(
                {Violation::Kind::MissingParameter,
                 "schema property '" + p + "' is never mentioned in parameter_explanation"});

    const std::set<std::string> known(props.begin(), props.end());
    for (const auto& claimed : claimed_parameters(augmented.parameter_explanation))
        if (!known.count(claimed))
            report.violations.push_back(
                {Violation::Kind::UnknownParameter,
                 "parameter_explanation names '" + claimed + "' which the schema does not declare"});

    if (!augmented.examples_ungrounded && traces) {
        for (const auto& token :
             ungrounded_example_tokens(augmented.examples, original.name, *traces))
            report.violations.push_back(
                {Violation::Kind::UngroundedExample,
                 "examples reference '" + token + "' which appears in no trace"});
    }

    for (DescComponent c : kAllDescComponents) {
        const std::string& value = augmented.field(c);
        if (text::trim(value).empty()) {
            if (c == DescComponent::Examples && augmented.examples_ungrounded) continue;
            report.violations.push_back({Violation::Kind::EmptyField,
                                         std::string(desc_component_name(c)) + " is empty"});
        }
    }
    return report;
}

} // namespace tooldesc::augment
