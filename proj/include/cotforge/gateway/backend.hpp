#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "cotforge/gateway/types.hpp"

namespace cotforge::gateway {

/// Completion transport. Implementations must be safe to call from
/// multiple worker threads at once.
class ModelBackend {
public:
    virtual ~ModelBackend() = default;
    virtual Result<ModelResponse> complete(const ModelRequest& request) = 0;
};

/// Serves canned responses in FIFO order, independent of request content.
/// Popping past the end is a transport error so tests that mis-count their
/// scripts fail loudly instead of hanging on a silent default.
class ScriptedBackend : public ModelBackend {
public:
    ScriptedBackend() = default;
    explicit ScriptedBackend(std::vector<ModelResponse> responses);

    void push_text(const std::string& text);
    void push_response(ModelResponse response);
    void push_error(Error error);

    Result<ModelResponse> complete(const ModelRequest& request) override;

    /// Requests seen so far, in arrival order.
    std::vector<ModelRequest> consumed() const;
    std::size_t remaining() const;

private:
    struct Slot {
        bool is_error = false;
        ModelResponse response;
        Error error{ErrorKind::transport, ""};
    };

    mutable std::mutex mutex_;
    std::deque<Slot> queue_;
    std::vector<ModelRequest> consumed_;
};

struct RetryPolicy {
    int max_attempts = 3;
    long initial_backoff_ms = 1000;
};

/// Wraps another backend with bounded retries. Only transient failures
/// (transport, rate_limited) are retried; everything else surfaces at once.
/// Backoff doubles per attempt unless the error carries a server-provided
/// retry delay, which takes precedence.
class RetryBackend : public ModelBackend {
public:
    using Sleeper = std::function<void(long ms)>;

    RetryBackend(std::shared_ptr<ModelBackend> inner, RetryPolicy policy);
    RetryBackend(std::shared_ptr<ModelBackend> inner, RetryPolicy policy, Sleeper sleeper);

    Result<ModelResponse> complete(const ModelRequest& request) override;

private:
    std::shared_ptr<ModelBackend> inner_;
    RetryPolicy policy_;
    Sleeper sleeper_;
};

} // namespace cotforge::gateway
