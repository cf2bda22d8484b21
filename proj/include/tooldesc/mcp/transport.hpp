#pragma once

#include <chrono>
#include <deque>
#include <memory>
#include <string>

#include "tooldesc/json.hpp"
#include "tooldesc/mcp/endpoint.hpp"
#include "tooldesc/mcp/framing.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

/// Message-oriented view of a connection: push one JSON-RPC message out, pull
/// incoming messages in arrival order.
class Transport {
public:
    virtual ~Transport() = default;
    virtual Result<void> send(const Json& message) = 0;
    virtual Result<Json> receive(std::chrono::milliseconds timeout) = 0;
    virtual void close() = 0;
    virtual const std::string& peer() const = 0;
};

/// Child process speaking newline-delimited JSON-RPC on its stdio.
class StdioProcessTransport final : public Transport {
public:
    static Result<std::unique_ptr<StdioProcessTransport>> spawn(const Endpoint& endpoint);
    ~StdioProcessTransport() override;

    Result<void> send(const Json& message) override;
    Result<Json> receive(std::chrono::milliseconds timeout) override;
    void close() override;
    const std::string& peer() const override { return peer_; }

private:
    StdioProcessTransport() = default;

    std::string peer_;
    int pid_ = -1;
    int write_fd_ = -1; // child stdin
    int read_fd_ = -1;  // child stdout
    LineDecoder decoder_;
};

/// Streamable HTTP client: POSTs each message; responses (single JSON or an
/// SSE stream of JSON messages) are queued for receive(). Notifications
/// expect 202-style acceptance.
class HttpTransport final : public Transport {
public:
    static Result<std::unique_ptr<HttpTransport>> open(const Endpoint& endpoint);
    ~HttpTransport() override;

    Result<void> send(const Json& message) override;
    Result<Json> receive(std::chrono::milliseconds timeout) override;
    void close() override;
    const std::string& peer() const override { return peer_; }

private:
    HttpTransport() = default;

    std::string peer_;
    std::string base_;
    std::string path_;
    std::string bearer_;
    std::string session_id_; // Mcp-Session-Id, assigned by the server on initialize
    std::deque<Json> inbox_;
    std::unique_ptr<class HttpClientImpl> client_;
};

Result<std::unique_ptr<Transport>> open_transport(const Endpoint& endpoint);

} // namespace tooldesc::mcp
