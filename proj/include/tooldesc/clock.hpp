#pragma once

#include <string>

namespace tooldesc {

/// Current time as ISO 8601 UTC ("2025-08-09T12:00:00Z").
std::string iso8601_utc_now();

} // namespace tooldesc
