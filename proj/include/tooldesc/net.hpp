#pragma once

#include <string>

#include "tooldesc/result.hpp"

namespace tooldesc::net {

struct ParsedUrl {
    std::string base; // scheme://host[:port], what httplib::Client expects
    std::string path; // leading '/', query preserved; "/" when absent
};

Result<ParsedUrl> parse_url(const std::string& url);

} // namespace tooldesc::net
