#include "tooldesc/mcp/framing.hpp"

namespace tooldesc::mcp {

std::string encode_frame(const Json& message) { return message.dump() + "\n"; }

void LineDecoder::feed(std::string_view bytes) {
    buffer_.append(bytes);
    size_t start = 0;
    while (true) {
        const size_t nl = buffer_.find('\n', start);
        if (nl == std::string::npos) break;
        std::string line = buffer_.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::uint64_t line_offset = consumed_;
        consumed_ += (nl - start) + 1;
        start = nl + 1;
        if (line.find_first_not_of(" \t") == std::string::npos) continue; // blank keep-alive line
        try {
            ready_.emplace_back(Json::parse(line));
        } catch (const Json::parse_error& e) {
            ready_.emplace_back(make_error(
                ErrorCode::Framing,
                "malformed JSON frame at byte offset " + std::to_string(line_offset + e.byte - 1),
                Json{{"offset", line_offset + e.byte - 1}, {"line", line}}));
        }
    }
    buffer_.erase(0, start);
}

std::optional<Result<Json>> LineDecoder::next() {
    if (ready_.empty()) return std::nullopt;
    Result<Json> front = std::move(ready_.front());
    ready_.pop_front();
    return front;
}

} // namespace tooldesc::mcp
