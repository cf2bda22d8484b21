#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tooldesc/mcp/endpoint.hpp"
#include "tooldesc/mcp/jsonrpc.hpp"
#include "tooldesc/mcp/transport.hpp"
#include "tooldesc/mcp/types.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

inline constexpr const char* kOfferedProtocolVersion = "2025-06-18";
inline constexpr const char* kClientName = "tooldesc";
inline constexpr const char* kClientVersion = "0.1.0";

/// Raw message log, used by integration tests to diff proxied against direct
/// traffic.
struct TranscriptEntry {
    enum class Direction { Send, Recv } direction;
    Json message;
};
using Transcript = std::vector<TranscriptEntry>;

/// One initialized connection to a server. Single-owner: drive it from one
/// logical consumer; concurrent scans open one session per server.
class Session {
public:
    /// Connect and run the initialize handshake plus the initialized
    /// notification. Whatever protocol revision the peer offers is recorded;
    /// a mismatch against our offer is flagged, not silently ignored.
    static Result<Session> connect(const Endpoint& endpoint, const ClientConfig& config = {});

    Session(Session&&) noexcept = default;
    Session& operator=(Session&&) noexcept = default;
    ~Session();

    const std::string& endpoint_name() const { return endpoint_name_; }
    const std::string& server_name() const { return server_name_; }
    const std::string& server_version() const { return server_version_; }
    const std::string& protocol_version() const { return protocol_version_; }
    bool version_mismatch() const { return version_mismatch_; }
    const Json& server_capabilities() const { return capabilities_; }

    /// Every advertised tool, following pagination cursors until exhausted
    /// (bounded by ClientConfig::max_pages). Description text verbatim.
    Result<std::vector<ToolDescriptor>> list_tools();

    /// Invoke a tool by name. The name must appear in the server's listing;
    /// unknown names fail before any wire traffic.
    Result<ToolResult> call_tool(const std::string& name, const Json& arguments);

    /// Send any request and return the raw response message (result or error
    /// untouched). Used by the proxy for verbatim forwarding.
    Result<Json> raw_request(const std::string& method, const Json& params);
    Result<void> raw_notify(const std::string& method, const Json& params);

    void set_transcript(Transcript* sink) { transcript_ = sink; }
    void close();

private:
    Session() = default;

    Result<Json> request(const std::string& method, const Json& params);

    std::unique_ptr<Transport> transport_;
    ClientConfig config_;
    std::string endpoint_name_;
    std::string server_name_;
    std::string server_version_;
    std::string protocol_version_;
    Json capabilities_ = Json::object();
    bool version_mismatch_ = false;
    long next_id_ = 1;
    std::set<long> used_ids_;
    std::optional<std::set<std::string>> known_tools_;
    Transcript* transcript_ = nullptr;
};

} // namespace tooldesc::mcp
