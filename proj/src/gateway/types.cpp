#include "cotforge/gateway/types.hpp"

namespace cotforge::gateway {

const char* to_string(Role role) {
    switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    }
    return "unknown";
}

Result<Role> role_from_string(const std::string& name) {
    if (name == "system") return Role::system;
    if (name == "user") return Role::user;
    if (name == "assistant") return Role::assistant;
    return make_error(ErrorKind::schema, "unknown role '" + name + "'");
}

Status SamplingParams::validate() const {
    if (!(temperature >= 0.0 && temperature <= 2.0))
        return make_error(ErrorKind::invariant, "temperature out of [0.0, 2.0]");
    if (!(presence_penalty >= -2.0 && presence_penalty <= 2.0))
        return make_error(ErrorKind::invariant, "presence_penalty out of [-2.0, 2.0]");
    if (!(top_p > 0.0 && top_p <= 1.0))
        return make_error(ErrorKind::invariant, "top_p out of (0.0, 1.0]");
    if (max_output_tokens <= 0)
        return make_error(ErrorKind::invariant, "max_output_tokens must be positive");
    return Status::success();
}

Status ChatMessage::validate() const {
    if (content.empty())
        return make_error(ErrorKind::invariant, "message content must be non-empty");
    return Status::success();
}

Status ModelRequest::validate() const {
    if (model_id.empty())
        return make_error(ErrorKind::invariant, "model_id must be non-empty");
    if (messages.empty())
        return make_error(ErrorKind::invariant, "messages list must be non-empty");
    if (messages.front().role == Role::assistant)
        return make_error(ErrorKind::invariant, "first message role must be system or user");
    for (const auto& message : messages) {
        if (auto s = message.validate(); !s.ok()) return s;
    }
    return params.validate();
}

} // namespace cotforge::gateway
