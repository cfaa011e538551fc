#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace cotforge {

/// Failure categories used across the whole pipeline. Gateway backends
/// surface the first four; parsers and the harness use the rest.
enum class ErrorKind {
    transport,        // network failure, timeout, scripted queue exhausted (retryable)
    auth,             // bad or missing credentials (fatal)
    rate_limited,     // throttled; retry_after_ms may carry a hint
    malformed_reply,  // wire payload or replayed entry unusable
    cassette_corrupt, // unreadable cassette entry
    format,           // model reply does not match the expected grammar
    index_mismatch,   // step prefix index differs from the expected index
    unknown_letter,   // answer letter not among the question's options
    invariant,        // a domain invariant would be violated
    illegal_transition,
    budget,           // call ceiling reached
    schema,           // dataset record malformed
    missing_cell,     // outcome grid has holes
    config,           // bad configuration, paths, templates
    io,               // filesystem failure
};

const char* to_string(ErrorKind kind);

struct Error {
    ErrorKind kind = ErrorKind::config;
    std::string message;
    std::optional<long> retry_after_ms; // only for rate_limited

    std::string describe() const;
};

inline Error make_error(ErrorKind kind, std::string message) {
    return Error{kind, std::move(message), std::nullopt};
}

/// Value-or-error carrier for every recoverable failure path.
template <typename T>
class Result {
public:
    Result(T value) : state_(std::move(value)) {}
    Result(Error error) : state_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(state_); }
    explicit operator bool() const { return ok(); }

    const T& value() const& { return std::get<T>(state_); }
    T& value() & { return std::get<T>(state_); }
    T&& take() { return std::move(std::get<T>(state_)); }

    const Error& error() const { return std::get<Error>(state_); }

private:
    std::variant<T, Error> state_;
};

/// Result with no payload.
class Status {
public:
    Status() = default;
    Status(Error error) : error_(std::move(error)) {}
    static Status success() { return Status(); }

    bool ok() const { return !error_.has_value(); }
    explicit operator bool() const { return ok(); }
    const Error& error() const { return *error_; }

private:
    std::optional<Error> error_;
};

} // namespace cotforge
