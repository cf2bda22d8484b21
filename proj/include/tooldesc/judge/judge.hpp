#pragma once

#include <string>

#include "tooldesc/mcp/types.hpp"
#include "tooldesc/result.hpp"
#include "tooldesc/rubric/rubric.hpp"

namespace tooldesc::judge {

enum class JudgeKind { Remote, Heuristic };

/// Configuration of one judge backend. Remote specs describe a generic
/// chat-completion endpoint (system + user message, JSON body, bearer auth);
/// model identity is pure configuration.
struct JudgeSpec {
    JudgeKind kind = JudgeKind::Heuristic;
    std::string model_id;                            // remote only
    std::string endpoint_url;                        // remote only, absolute URL
    std::string credential_env = "TOOLDESC_API_KEY"; // env var holding the bearer token
    double temperature = 0.0;                        // remote only; 0 keeps scores stable
    int max_attempts = 3;

    static JudgeSpec heuristic();
    static JudgeSpec remote(std::string model_id, std::string endpoint_url,
                            std::string credential_env = "TOOLDESC_API_KEY");

    Result<void> validate() const;
    Json to_json() const;
    static Result<JudgeSpec> from_json(const Json& j);
};

/// Cap on simultaneous remote judge calls (default 8).
void set_remote_inflight_limit(int limit);

/// Score one prompt with the given backend. The remote backend retries on
/// parse failure up to max_attempts, feeding the parse error back as a
/// corrective instruction; exhausted attempts fail with every raw reply
/// attached. Network and auth failures are reported distinctly and are not
/// retried.
Result<rubric::JudgeVerdict> judge(const JudgeSpec& spec, const std::string& prompt);

/// The deterministic offline backend, exposed directly for callers that hold
/// a descriptor rather than a prompt.
rubric::JudgeVerdict heuristic_verdict(const mcp::ToolDescriptor& tool);

/// One chat-completion round trip against a remote spec; returns the reply
/// content verbatim. No retries at this level. Auth and network failures are
/// distinguished by error code (Config vs Transport).
Result<std::string> chat_complete(const JudgeSpec& spec, const std::string& system,
                                  const std::string& user);

} // namespace tooldesc::judge
