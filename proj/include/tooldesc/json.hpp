#pragma once

#include <json.hpp>

namespace tooldesc {

// Insertion order is preserved end to end so proxied payloads re-serialize
// the way they arrived.
using Json = nlohmann::ordered_json;

} // namespace tooldesc
