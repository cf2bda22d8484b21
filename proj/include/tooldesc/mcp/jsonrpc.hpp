#pragma once

#include <optional>
#include <string>

#include "tooldesc/json.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

inline constexpr const char* kJsonRpcVersion = "2.0";

// JSON-RPC error codes used on the wire.
inline constexpr int kParseError = -32700;
inline constexpr int kInvalidRequest = -32600;
inline constexpr int kMethodNotFound = -32601;
inline constexpr int kInvalidParams = -32602;
inline constexpr int kInternalError = -32603;
inline constexpr int kUpstreamLost = -32010; // proxy-specific: upstream connection gone

/// One JSON-RPC 2.0 message. Requests carry method + id, notifications only a
/// method, responses exactly one of result/error.
struct RpcMessage {
    std::optional<Json> id; // integer or string per the spec
    std::optional<std::string> method;
    Json params = nullptr;
    std::optional<Json> result;
    std::optional<Json> error;

    bool is_request() const { return method.has_value() && id.has_value(); }
    bool is_notification() const { return method.has_value() && !id.has_value(); }
    bool is_response() const { return !method.has_value() && id.has_value(); }

    Json to_json() const;
    static Result<RpcMessage> from_json(const Json& j);
};

Json make_request(const Json& id, const std::string& method, const Json& params);
Json make_notification(const std::string& method, const Json& params);
Json make_response(const Json& id, const Json& result);
Json make_error_response(const Json& id, int code, const std::string& message,
                         const Json& data = nullptr);

} // namespace tooldesc::mcp
