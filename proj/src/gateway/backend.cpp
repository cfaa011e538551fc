#include "cotforge/gateway/backend.hpp"

#include <chrono>
#include <thread>
#include <utility>

namespace cotforge::gateway {

ScriptedBackend::ScriptedBackend(std::vector<ModelResponse> responses) {
    for (auto& r : responses)
        queue_.push_back(Slot{.is_error = false, .response = std::move(r)});
}

void ScriptedBackend::push_text(const std::string& text) {
    std::lock_guard lock(mutex_);
    queue_.push_back(Slot{.is_error = false, .response = ModelResponse{.text = text}});
}

void ScriptedBackend::push_response(ModelResponse response) {
    std::lock_guard lock(mutex_);
    queue_.push_back(Slot{.is_error = false, .response = std::move(response)});
}

void ScriptedBackend::push_error(Error error) {
    std::lock_guard lock(mutex_);
    queue_.push_back(Slot{.is_error = true, .error = std::move(error)});
}

Result<ModelResponse> ScriptedBackend::complete(const ModelRequest& request) {
    std::lock_guard lock(mutex_);
    consumed_.push_back(request);
    if (queue_.empty())
        return make_error(ErrorKind::transport, "scripted backend queue exhausted");
    Slot slot = std::move(queue_.front());
    queue_.pop_front();
    if (slot.is_error) return std::move(slot.error);
    return std::move(slot.response);
}

std::vector<ModelRequest> ScriptedBackend::consumed() const {
    std::lock_guard lock(mutex_);
    return consumed_;
}

std::size_t ScriptedBackend::remaining() const {
    std::lock_guard lock(mutex_);
    return queue_.size();
}

namespace {

bool retryable(ErrorKind kind) {
    return kind == ErrorKind::transport || kind == ErrorKind::rate_limited;
}

} // namespace

RetryBackend::RetryBackend(std::shared_ptr<ModelBackend> inner, RetryPolicy policy)
    : RetryBackend(std::move(inner), policy, [](long ms) {
          std::this_thread::sleep_for(std::chrono::milliseconds(ms));
      }) {}

RetryBackend::RetryBackend(std::shared_ptr<ModelBackend> inner, RetryPolicy policy, Sleeper sleeper)
    : inner_(std::move(inner)), policy_(policy), sleeper_(std::move(sleeper)) {}

Result<ModelResponse> RetryBackend::complete(const ModelRequest& request) {
    long backoff = policy_.initial_backoff_ms;
    for (int attempt = 1;; ++attempt) {
        auto result = inner_->complete(request);
        if (result.ok()) return result;
        const Error& err = result.error();
        if (!retryable(err.kind) || attempt >= policy_.max_attempts) return result;
        sleeper_(err.retry_after_ms.value_or(backoff));
        backoff *= 2;
    }
}

} // namespace cotforge::gateway
