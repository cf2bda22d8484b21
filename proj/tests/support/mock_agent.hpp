#pragma once

#include <string>
#include <vector>

#include "tooldesc/mcp/endpoint.hpp"
#include "tooldesc/result.hpp"
#include "tooldesc/stats/stats.hpp"

namespace mockagent {

/// Scripted agent that consumes the served tool descriptions the way a model
/// would: it only calls an argument by name when the description mentions it,
/// otherwise it guesses once and falls back to the schema. Richer served
/// descriptions therefore change the outcome stream.
tooldesc::Result<std::vector<tooldesc::stats::TaskOutcome>> run_script(
    const tooldesc::mcp::Endpoint& endpoint, const std::string& variant_label,
    const tooldesc::mcp::ClientConfig& config = {});

} // namespace mockagent
