#include "tooldesc/cli/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tooldesc/text.hpp"

namespace tooldesc::cli {

Result<ServerManifest> ServerManifest::from_json(const Json& j) {
    const Json* servers = nullptr;
    if (j.is_array())
        servers = &j;
    else if (j.is_object() && j.contains("servers") && j["servers"].is_array())
        servers = &j["servers"];
    else
        return make_error(ErrorCode::Config,
                          "manifest must be an array of servers or {\"servers\": [...]}");

    ServerManifest m;
    std::set<std::string> labels;
    for (const Json& entry : *servers) {
        auto endpoint = mcp::Endpoint::from_json(entry);
        if (!endpoint) return endpoint.error();
        if (!labels.insert(endpoint.value().name).second)
            return make_error(ErrorCode::Config,
                              "duplicate server label '" + endpoint.value().name + "' in manifest");
        ManifestEntry e;
        e.endpoint = std::move(endpoint).value();
        e.official = entry.is_object() && entry.value("official", false);
        m.servers.push_back(std::move(e));
    }
    return m;
}

Result<ServerManifest> ServerManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return make_error(ErrorCode::Config, "cannot open manifest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Json j;
    try {
        j = Json::parse(text::interpolate_env(buf.str()));
    } catch (const Json::parse_error& e) {
        return make_error(ErrorCode::Config, "manifest " + path + ": " + e.what());
    }
    return from_json(j);
}

} // namespace tooldesc::cli
