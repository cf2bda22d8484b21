#pragma once

#include <string>
#include <vector>

#include "tooldesc/json.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

/// One tool as advertised by a server via reflection. The description is kept
/// byte-for-byte as received; scoring must see exactly what a model sees.
struct ToolDescriptor {
    std::string name;
    std::string description;
    Json input_schema = nullptr; // null when the server omits it; object otherwise
    std::string server;          // endpoint label the tool was listed from

    Json to_json() const;
    static Result<ToolDescriptor> from_json(const Json& j);

    bool operator==(const ToolDescriptor&) const = default;
};

/// Result payload of a tools/call, verbatim from the server.
struct ToolResult {
    Json content = Json::array();
    bool is_error = false;
    Json raw = Json::object(); // full result object as received

    /// Concatenated text of all text-type content blocks.
    std::string text() const;
};

/// Names of schema properties ("properties" keys of an object-typed schema).
std::vector<std::string> schema_property_names(const Json& input_schema);

} // namespace tooldesc::mcp
