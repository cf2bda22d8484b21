#include "tooldesc/net.hpp"

namespace tooldesc::net {

Result<ParsedUrl> parse_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        return make_error(ErrorCode::Config, "URL must be absolute (scheme://...): " + url);
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        return make_error(ErrorCode::Config, "unsupported URL scheme '" + scheme + "' in " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == scheme_end + 3)
        return make_error(ErrorCode::Config, "URL has an empty host: " + url);
    ParsedUrl out;
    if (path_start == std::string::npos) {
        out.base = url;
        out.path = "/";
    } else {
        out.base = url.substr(0, path_start);
        out.path = url.substr(path_start);
    }
    return out;
}

} // namespace tooldesc::net
