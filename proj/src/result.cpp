#include "cotforge/result.hpp"

namespace cotforge {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::transport: return "transport";
    case ErrorKind::auth: return "auth";
    case ErrorKind::rate_limited: return "rate_limited";
    case ErrorKind::malformed_reply: return "malformed_reply";
    case ErrorKind::cassette_corrupt: return "cassette_corrupt";
    case ErrorKind::format: return "format";
    case ErrorKind::index_mismatch: return "index_mismatch";
    case ErrorKind::unknown_letter: return "unknown_letter";
    case ErrorKind::invariant: return "invariant";
    case ErrorKind::illegal_transition: return "illegal_transition";
    case ErrorKind::budget: return "budget";
    case ErrorKind::schema: return "schema";
    case ErrorKind::missing_cell: return "missing_cell";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

std::string Error::describe() const {
    std::string out = std::string(to_string(kind)) + ": " + message;
    if (retry_after_ms)
        out += " (retry after " + std::to_string(*retry_after_ms) + "ms)";
    return out;
}

} // namespace cotforge
