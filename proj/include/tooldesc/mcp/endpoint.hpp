#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "tooldesc/json.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

enum class TransportKind { Stdio, Http };

/// Where and how to reach one MCP server.
struct Endpoint {
    TransportKind transport = TransportKind::Stdio;
    std::string name; // label used as the store key and in error messages

    // stdio
    std::string command;
    std::vector<std::string> args;
    std::map<std::string, std::string> env;

    // streamable http
    std::string url;
    std::string bearer_token;

    static Endpoint stdio(std::string name, std::string command, std::vector<std::string> args = {},
                          std::map<std::string, std::string> env = {});
    static Endpoint http(std::string name, std::string url, std::string bearer_token = "");

    Result<void> validate() const;
    Json to_json() const;
    static Result<Endpoint> from_json(const Json& j);
};

/// Client-side knobs the protocol itself does not fix.
struct ClientConfig {
    std::chrono::milliseconds handshake_timeout{30000};
    std::chrono::milliseconds rpc_timeout{30000};
    int max_pages = 64; // pagination loop bound for tools/list
    int retries = 0;    // request retries on transport failure
};

} // namespace tooldesc::mcp
