// Hermetic MCP server used by the integration and acceptance suites. Speaks
// newline-delimited JSON-RPC on stdio and exposes a small set of tools whose
// description quality deliberately varies.

#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tooldesc/mcp/server.hpp"

namespace {

using tooldesc::Json;
using tooldesc::mcp::ServerTool;
using tooldesc::mcp::ToolOutcome;
using tooldesc::mcp::ToolRegistryHandler;

constexpr const char* kReverseTextDescription =
    "Reverses the characters of the given text and returns the reversed string as a single text "
    "content block. It performs a pure, in-memory transformation and never calls external "
    "services. Use this tool when you need to reverse identifiers, test palindromes, or undo a "
    "previous reversal. Do not use it for numeric arithmetic. It only handles plain strings and "
    "cannot process binary data; inputs are limited to a maximum of 64 kilobytes.\n"
    "\n"
    "Parameters:\n"
    "- text (string): The text to reverse.\n"
    "\n"
    "Examples:\n"
    "Calling it with text = \"abc\" returns \"cba\".\n";

ServerTool make_echo() {
    ServerTool t;
    t.name = "echo";
    t.description = "Echoes back the provided message.";
    t.input_schema =
        Json{{"type", "object"},
             {"properties", Json{{"msg", Json{{"type", "string"},
                                              {"description", "Message to echo back."}}}}},
             {"required", Json::array({"msg"})}};
    t.handler = [](const Json& args) {
        if (!args.is_object() || !args.contains("msg") || !args["msg"].is_string())
            return ToolOutcome::text("echo requires a string 'msg' argument", true);
        return ToolOutcome::text(args["msg"].get<std::string>());
    };
    return t;
}

ServerTool make_fail_always() {
    ServerTool t;
    t.name = "fail_always";
    t.description = "Always fails.";
    t.input_schema = Json{{"type", "object"}, {"properties", Json::object()}};
    t.handler = [](const Json&) { return ToolOutcome::text("this tool always fails", true); };
    return t;
}

ServerTool make_reverse_text() {
    ServerTool t;
    t.name = "reverse_text";
    t.description = kReverseTextDescription;
    t.input_schema =
        Json{{"type", "object"},
             {"properties", Json{{"text", Json{{"type", "string"},
                                               {"description", "The text to reverse."}}}}},
             {"required", Json::array({"text"})}};
    t.handler = [](const Json& args) {
        if (!args.is_object() || !args.contains("text") || !args["text"].is_string())
            return ToolOutcome::text("reverse_text requires a string 'text' argument", true);
        std::string s = args["text"].get<std::string>();
        std::reverse(s.begin(), s.end());
        return ToolOutcome::text(s);
    };
    return t;
}

/// tools/list that never advances its cursor; exercises the client's
/// pagination bound.
class LoopingHandler final : public ToolRegistryHandler {
public:
    using ToolRegistryHandler::ToolRegistryHandler;

protected:
    Json list_result(const std::optional<std::string>& cursor) override {
        Json result = ToolRegistryHandler::list_result(std::nullopt);
        (void)cursor;
        result["nextCursor"] = "0";
        return result;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixture MCP server (stdio)"};
    std::string server_name = "tooldesc-fixture";
    int page_size = 0;
    int extra_tools = 0;
    bool zero_tools = false;
    bool loop_pages = false;
    app.add_option("--server-name", server_name, "advertised server name");
    app.add_option("--page-size", page_size, "tools per tools/list page (0 = all)");
    app.add_option("--extra-tools", extra_tools, "number of synthetic extra tools");
    app.add_flag("--zero-tools", zero_tools, "advertise no tools at all");
    app.add_flag("--loop-pages", loop_pages, "never terminate pagination (test mode)");
    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<ToolRegistryHandler> handler;
    if (loop_pages)
        handler = std::make_unique<LoopingHandler>(server_name, "1.0.0");
    else
        handler = std::make_unique<ToolRegistryHandler>(server_name, "1.0.0");
    handler->set_page_size(page_size);

    if (!zero_tools) {
        handler->add_tool(make_echo());
        handler->add_tool(make_fail_always());
        handler->add_tool(make_reverse_text());
        for (int i = 1; i <= extra_tools; ++i) {
            ServerTool t;
            t.name = "extra_tool_" + std::to_string(i);
            t.description = "Returns canned payload " + std::to_string(i) + ".";
            t.input_schema = Json{{"type", "object"}, {"properties", Json::object()}};
            t.handler = [i](const Json&) {
                return ToolOutcome::text("payload " + std::to_string(i));
            };
            handler->add_tool(std::move(t));
        }
    }

    tooldesc::mcp::serve_stdio(*handler, std::cin, std::cout);
    return 0;
}
