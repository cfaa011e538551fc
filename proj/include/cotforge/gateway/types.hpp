#pragma once

#include "cotforge/result.hpp"

#include <string>
#include <vector>

namespace cotforge::gateway {

enum class Role { system, user, assistant };

const char* to_string(Role role);
Result<Role> role_from_string(const std::string& name);

/// Per-call sampling configuration. Ranges are checked by validate(),
/// which every backend runs before dispatching a request.
struct SamplingParams {
    double temperature = 1.0;      // [0.0, 2.0]
    double presence_penalty = 0.0; // [-2.0, 2.0]
    double top_p = 1.0;            // (0.0, 1.0]
    int max_output_tokens = 1024;  // > 0

    Status validate() const;
};

struct ChatMessage {
    Role role = Role::user;
    std::string content; // non-empty

    Status validate() const;
};

struct ModelRequest {
    std::string model_id;
    std::vector<ChatMessage> messages; // non-empty; first role system or user
    SamplingParams params;

    Status validate() const;
};

struct ModelResponse {
    std::string text;
    long prompt_tokens = 0;     // zero when the backend cannot report usage
    long completion_tokens = 0;
    long latency_ms = 0;
};

/// Running totals across the calls of one chain or one whole trial.
struct TokenUsage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
    int calls = 0;

    void add(const ModelResponse& response) {
        prompt_tokens += response.prompt_tokens;
        completion_tokens += response.completion_tokens;
        ++calls;
    }
    void add(const TokenUsage& other) {
        prompt_tokens += other.prompt_tokens;
        completion_tokens += other.completion_tokens;
        calls += other.calls;
    }
};

} // namespace cotforge::gateway
