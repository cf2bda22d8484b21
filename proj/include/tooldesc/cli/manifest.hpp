#pragma once

#include <string>
#include <vector>

#include "tooldesc/mcp/endpoint.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::cli {

struct ManifestEntry {
    mcp::Endpoint endpoint;
    bool official = false; // enables official-vs-community splits in scan reports
};

struct ServerManifest {
    std::vector<ManifestEntry> servers;

    static Result<ServerManifest> load(const std::string& path);
    static Result<ServerManifest> from_json(const Json& j);
};

} // namespace tooldesc::cli
