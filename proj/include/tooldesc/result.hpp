#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "tooldesc/json.hpp"

namespace tooldesc {

enum class ErrorCode {
    Transport,  // process/socket level failure
    Timeout,
    Framing,    // malformed bytes on the wire
    Protocol,   // well-formed but protocol-violating traffic
    Rpc,        // JSON-RPC error object from the peer
    Parse,      // application-level parse failure (verdicts, traces, ...)
    Validation,
    Config,
    Storage,
    Conflict,   // retry-able concurrent-writer conflict
    Judge,
    Stage,      // augmentation stage failure
    Usage,
};

const char* error_code_name(ErrorCode code);

struct Error {
    ErrorCode code;
    std::string message;
    Json detail = Json::object(); // optional structured context (offsets, raw replies, ...)

    std::string to_string() const { return std::string(error_code_name(code)) + ": " + message; }
};

/// Value-or-error carrier used by every fallible operation in the library.
template <typename T>
class [[nodiscard]] Result {
public:
    Result(T value) : data_(std::move(value)) {}
    Result(Error error) : data_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(data_); }
    explicit operator bool() const { return ok(); }

    T& value() & {
        if (!ok()) throw std::runtime_error("Result::value on error: " + error().to_string());
        return std::get<T>(data_);
    }
    const T& value() const& {
        if (!ok()) throw std::runtime_error("Result::value on error: " + error().to_string());
        return std::get<T>(data_);
    }
    T&& value() && {
        if (!ok()) throw std::runtime_error("Result::value on error: " + error().to_string());
        return std::get<T>(std::move(data_));
    }

    const Error& error() const {
        if (ok()) throw std::runtime_error("Result::error on success");
        return std::get<Error>(data_);
    }
    Error& error() {
        if (ok()) throw std::runtime_error("Result::error on success");
        return std::get<Error>(data_);
    }

private:
    std::variant<T, Error> data_;
};

template <>
class [[nodiscard]] Result<void> {
public:
    Result() = default;
    Result(Error error) : error_(std::move(error)) {}

    bool ok() const { return !error_.has_value(); }
    explicit operator bool() const { return ok(); }

    const Error& error() const {
        if (ok()) throw std::runtime_error("Result::error on success");
        return *error_;
    }

private:
    std::optional<Error> error_;
};

inline Error make_error(ErrorCode code, std::string message, Json detail = Json::object()) {
    return Error{code, std::move(message), std::move(detail)};
}

} // namespace tooldesc
