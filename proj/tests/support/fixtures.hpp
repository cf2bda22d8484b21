#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tooldesc/mcp/client.hpp"
#include "tooldesc/mcp/endpoint.hpp"
#include "tooldesc/mcp/types.hpp"

namespace fixtures {

/// Official-server one-phrase description ("Creates PayPal Invoice Link.").
tooldesc::mcp::ToolDescriptor paypal_invoice();

/// The multi-section sequential-thinking description, the canonical example
/// of a high-quality tool description.
tooldesc::mcp::ToolDescriptor sequential_thinking();

/// Endpoint running the bundled fixture server binary with extra flags.
tooldesc::mcp::Endpoint fixture_endpoint(const std::string& name,
                                         const std::vector<std::string>& extra_args = {});

/// Fresh directory under the system temp root; caller owns cleanup (or not).
std::filesystem::path make_temp_dir(const std::string& prefix);

/// The two-task worked example: 4 steps 3/3, 6 steps 2/4.
std::string worked_example_jsonl(const std::string& variant);

} // namespace fixtures
