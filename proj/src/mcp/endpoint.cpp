#include "tooldesc/mcp/endpoint.hpp"

#include <cstdlib>

#include "tooldesc/net.hpp"

namespace tooldesc::mcp {

Endpoint Endpoint::stdio(std::string name, std::string command, std::vector<std::string> args,
                         std::map<std::string, std::string> env) {
    Endpoint e;
    e.transport = TransportKind::Stdio;
    e.name = std::move(name);
    e.command = std::move(command);
    e.args = std::move(args);
    e.env = std::move(env);
    return e;
}

Endpoint Endpoint::http(std::string name, std::string url, std::string bearer_token) {
    Endpoint e;
    e.transport = TransportKind::Http;
    e.name = std::move(name);
    e.url = std::move(url);
    e.bearer_token = std::move(bearer_token);
    return e;
}

Result<void> Endpoint::validate() const {
    if (name.empty()) return make_error(ErrorCode::Config, "endpoint has no name label");
    if (transport == TransportKind::Stdio) {
        if (command.empty())
            return make_error(ErrorCode::Config, "stdio endpoint '" + name + "' has an empty command");
    } else {
        auto parsed = net::parse_url(url);
        if (!parsed)
            return make_error(ErrorCode::Config,
                              "http endpoint '" + name + "': " + parsed.error().message);
    }
    return {};
}

Json Endpoint::to_json() const {
    Json j = {{"name", name}};
    if (transport == TransportKind::Stdio) {
        j["transport"] = "stdio";
        j["command"] = command;
        j["args"] = args;
        if (!env.empty()) j["env"] = env;
    } else {
        j["transport"] = "http";
        j["url"] = url;
    }
    return j;
}

Result<Endpoint> Endpoint::from_json(const Json& j) {
    if (!j.is_object()) return make_error(ErrorCode::Config, "endpoint must be a JSON object");
    Endpoint e;
    e.name = j.value("name", "");
    const std::string kind = j.value("transport", "stdio");
    if (kind == "stdio") {
        e.transport = TransportKind::Stdio;
        e.command = j.value("command", "");
        if (j.contains("args"))
            for (const auto& a : j["args"]) e.args.push_back(a.get<std::string>());
        if (j.contains("env"))
            for (auto it = j["env"].begin(); it != j["env"].end(); ++it)
                e.env[it.key()] = it.value().get<std::string>();
    } else if (kind == "http" || kind == "streamable-http") {
        e.transport = TransportKind::Http;
        e.url = j.value("url", "");
        if (j.contains("bearer_token_env")) {
            const std::string var = j["bearer_token_env"].get<std::string>();
            if (const char* v = std::getenv(var.c_str())) e.bearer_token = v;
        }
    } else {
        return make_error(ErrorCode::Config, "unknown transport '" + kind + "'");
    }
    auto valid = e.validate();
    if (!valid) return valid.error();
    return e;
}

} // namespace tooldesc::mcp
