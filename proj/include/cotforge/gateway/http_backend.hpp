#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cotforge/gateway/backend.hpp"
#include "cotforge/gateway/types.hpp"

namespace cotforge::gateway {

enum class Dialect {
    completions,
    anthropic,
};

const char* to_string(Dialect dialect);
Result<Dialect> dialect_from_string(const std::string& name);

struct HttpOptions {
    long connect_timeout_s = 10;
    long read_timeout_s = 120;
    /// Receives one-line diagnostics (dropped parameters and the like).
    std::function<void(const std::string&)> log;
};

/// Live chat backend speaking one of two wire dialects.
///
/// completions-style posts {model, messages, temperature, presence_penalty,
/// top_p, max_tokens} to /v1/chat/completions with a Bearer token.
/// anthropic-style posts to /v1/messages with an x-api-key header, hoists a
/// leading system message into the top-level system field, and drops
/// presence_penalty with a logged warning since the dialect has no such
/// field.
///
/// HTTP status mapping: 401/403 -> auth, 429 -> rate_limited (retry-after
/// honored), 5xx and connection failures -> transport, anything else
/// non-2xx or an unparseable body -> malformed_reply.
class HttpChatBackend : public ModelBackend {
public:
    HttpChatBackend(Dialect dialect, std::string base_url, std::string api_key,
                    HttpOptions options = {});

    Result<ModelResponse> complete(const ModelRequest& request) override;

    /// Request body serialization for the configured dialect, exposed for
    /// contract tests.
    std::string render_body(const ModelRequest& request) const;

private:
    Dialect dialect_;
    std::string base_url_;
    std::string api_key_;
    HttpOptions options_;
};

/// Builds a retry-wrapped live backend for the dialect, reading the API key
/// from COTFORGE_OPENAI_KEY or COTFORGE_ANTHROPIC_KEY and the endpoint from
/// COTFORGE_BASE_URL_<DIALECT> when set.
Result<std::shared_ptr<ModelBackend>> make_live_backend(Dialect dialect, HttpOptions options = {});

} // namespace cotforge::gateway
