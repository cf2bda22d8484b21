#include "tooldesc/mcp/jsonrpc.hpp"

namespace tooldesc::mcp {

Json RpcMessage::to_json() const {
    Json j = Json::object();
    j["jsonrpc"] = kJsonRpcVersion;
    if (id) j["id"] = *id;
    if (method) j["method"] = *method;
    if (!params.is_null()) j["params"] = params;
    if (result) j["result"] = *result;
    if (error) j["error"] = *error;
    return j;
}

Result<RpcMessage> RpcMessage::from_json(const Json& j) {
    if (!j.is_object()) return make_error(ErrorCode::Protocol, "JSON-RPC message must be an object");
    if (j.value("jsonrpc", "") != kJsonRpcVersion)
        return make_error(ErrorCode::Protocol, "missing or wrong jsonrpc version field");
    RpcMessage m;
    if (j.contains("id")) {
        const Json& id = j["id"];
        if (!id.is_number_integer() && !id.is_string() && !id.is_null())
            return make_error(ErrorCode::Protocol, "id must be an integer or a string");
        if (!id.is_null()) m.id = id;
    }
    if (j.contains("method")) {
        if (!j["method"].is_string())
            return make_error(ErrorCode::Protocol, "method must be a string");
        m.method = j["method"].get<std::string>();
    }
    if (j.contains("params")) m.params = j["params"];
    if (j.contains("result")) m.result = j["result"];
    if (j.contains("error")) m.error = j["error"];

    if (m.method) {
        if (m.result || m.error)
            return make_error(ErrorCode::Protocol, "request carries result/error fields");
    } else {
        if (!m.id) return make_error(ErrorCode::Protocol, "message has neither method nor id");
        if (m.result.has_value() == m.error.has_value())
            return make_error(ErrorCode::Protocol,
                              "response must carry exactly one of result/error");
    }
    return m;
}

Json make_request(const Json& id, const std::string& method, const Json& params) {
    Json j = {{"jsonrpc", kJsonRpcVersion}, {"id", id}, {"method", method}};
    if (!params.is_null()) j["params"] = params;
    return j;
}

Json make_notification(const std::string& method, const Json& params) {
    Json j = {{"jsonrpc", kJsonRpcVersion}, {"method", method}};
    if (!params.is_null()) j["params"] = params;
    return j;
}

Json make_response(const Json& id, const Json& result) {
    return Json{{"jsonrpc", kJsonRpcVersion}, {"id", id}, {"result", result}};
}

Json make_error_response(const Json& id, int code, const std::string& message, const Json& data) {
    Json err = {{"code", code}, {"message", message}};
    if (!data.is_null()) err["data"] = data;
    return Json{{"jsonrpc", kJsonRpcVersion}, {"id", id}, {"error", err}};
}

} // namespace tooldesc::mcp
