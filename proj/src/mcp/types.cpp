#include "tooldesc/mcp/types.hpp"

namespace tooldesc::mcp {

Json ToolDescriptor::to_json() const {
    Json j = Json::object();
    j["server"] = server;
    j["name"] = name;
    j["description"] = description;
    j["input_schema"] = input_schema;
    return j;
}

Result<ToolDescriptor> ToolDescriptor::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
        return make_error(ErrorCode::Parse, "tool descriptor requires a string 'name'");
    ToolDescriptor t;
    t.name = j["name"].get<std::string>();
    if (t.name.empty()) return make_error(ErrorCode::Validation, "tool descriptor name is empty");
    if (j.contains("description")) {
        if (!j["description"].is_string())
            return make_error(ErrorCode::Parse, "tool '" + t.name + "': description must be a string");
        t.description = j["description"].get<std::string>();
    }
    if (j.contains("input_schema")) t.input_schema = j["input_schema"];
    if (!t.input_schema.is_null() && !t.input_schema.is_object())
        return make_error(ErrorCode::Validation, "tool '" + t.name + "': input_schema must be a JSON object");
    if (j.contains("server") && j["server"].is_string()) t.server = j["server"].get<std::string>();
    return t;
}

std::string ToolResult::text() const {
    std::string out;
    if (!content.is_array()) return out;
    for (const auto& block : content) {
        if (block.is_object() && block.value("type", "") == "text" && block.contains("text") &&
            block["text"].is_string())
            out += block["text"].get<std::string>();
    }
    return out;
}

std::vector<std::string> schema_property_names(const Json& input_schema) {
    std::vector<std::string> names;
    if (input_schema.is_object() && input_schema.contains("properties") &&
        input_schema["properties"].is_object()) {
        for (auto it = input_schema["properties"].begin(); it != input_schema["properties"].end(); ++it)
            names.push_back(it.key());
    }
    return names;
}

} // namespace tooldesc::mcp
