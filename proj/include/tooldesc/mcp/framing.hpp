#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>

#include "tooldesc/json.hpp"
#include "tooldesc/result.hpp"

namespace tooldesc::mcp {

// Stdio framing is newline-delimited JSON-RPC. The framing layer is kept
// behind these two entry points so a length-prefixed variant could be added
// without touching sessions or servers.

/// One outbound frame: compact JSON followed by a newline.
std::string encode_frame(const Json& message);

/// Incremental decoder for newline-delimited JSON. Feed raw bytes in any
/// chunking; pop complete messages (or framing errors) in arrival order.
/// Parse failures carry the absolute byte offset of the offending input.
class LineDecoder {
public:
    void feed(std::string_view bytes);

    /// Next decoded message or framing error, if a full line is available.
    std::optional<Result<Json>> next();

    /// Bytes consumed from the stream so far (completed lines only).
    std::uint64_t consumed() const { return consumed_; }

private:
    std::string buffer_;
    std::uint64_t consumed_ = 0;
    std::deque<Result<Json>> ready_;
};

} // namespace tooldesc::mcp
