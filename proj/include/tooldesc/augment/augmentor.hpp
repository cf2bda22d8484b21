#pragma once

#include <map>
#include <string>
#include <vector>

#include "tooldesc/augment/augmented.hpp"
#include "tooldesc/judge/judge.hpp"
#include "tooldesc/mcp/types.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::augment {

/// Stage-one output: everything except examples, which are grounded later
/// from execution traces.
struct DraftDescription {
    std::string purpose;
    std::string guidelines;
    std::string limitations;
    std::string parameter_explanation;
    std::string source_tool; // "<server>/<tool>"
    std::string model_id;

    Json to_json() const;
};

struct TraceCall {
    Json arguments = Json::object();
    Json response = Json::object();
    enum class Outcome { Success, Empty, Error } outcome = Outcome::Success;
};

const char* outcome_name(TraceCall::Outcome o);

/// Recorded executions of one tool against one task prompt.
struct ExecutionTrace {
    std::string tool;
    std::string task_prompt;
    std::vector<TraceCall> calls; // at least one

    Json to_json() const;
};

struct TraceIngest {
    std::vector<ExecutionTrace> traces;
    std::vector<std::string> warnings; // coverage shortfalls, per tool
};

/// Trace file format: a top-level array of
///   {tool, task_prompt, calls: [{arguments, response, outcome}]}.
/// Schema violations fail with the JSON path; malformed JSON fails with the
/// byte offset. Missing success/failure coverage per tool warns, not errors.
Result<TraceIngest> ingest_traces(const std::string& path);
Result<TraceIngest> ingest_traces_text(const std::string& json_text, const std::string& origin);

std::map<std::string, std::vector<ExecutionTrace>> group_by_tool(
    const std::vector<ExecutionTrace>& traces);

/// Stage one: rubric-guided rewrite of everything except examples. Model
/// failures leave the original untouched (the caller simply has no draft).
Result<DraftDescription> init_augment(const mcp::ToolDescriptor& tool,
                                      const judge::JudgeSpec& model);

/// Stage three: merge the draft and this tool's traces into the five-field
/// record. Replies missing a field (or referencing values absent from the
/// traces) earn a corrective retry; with no traces the examples field is
/// flagged ungrounded instead of validated.
Result<AugmentedDescription> consolidate(const DraftDescription& draft,
                                         const std::vector<ExecutionTrace>& traces,
                                         const judge::JudgeSpec& model);

struct Violation {
    enum class Kind {
        MissingParameter,   // schema property never mentioned
        UnknownParameter,   // text names a parameter the schema lacks
        UngroundedExample,  // example references a value absent from traces
        EmptyField,
    } kind;
    std::string detail;
};

const char* violation_kind_name(Violation::Kind k);

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    Json to_json() const;
};

/// Factuality guard over a finished augmentation. Passing traces re-checks
/// example grounding; without them the ungrounded flag is trusted.
ValidationReport validate_augmented(const mcp::ToolDescriptor& original,
                                    const AugmentedDescription& augmented,
                                    const std::vector<ExecutionTrace>* traces = nullptr);

/// Tokens in the examples text (quoted strings and number literals, length
/// >= 3) that match no argument value, argument name, outcome word, or the
/// tool name from the traces.
std::vector<std::string> ungrounded_example_tokens(const std::string& examples,
                                                   const std::string& tool_name,
                                                   const std::vector<ExecutionTrace>& traces);

} // namespace tooldesc::augment
