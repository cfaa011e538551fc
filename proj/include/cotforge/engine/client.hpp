#pragma once

#include <memory>
#include <string>

#include "cotforge/engine/transcript.hpp"
#include "cotforge/gateway/backend.hpp"
#include "cotforge/gateway/fingerprint.hpp"
#include "cotforge/gateway/types.hpp"
#include "cotforge/prompts/prompt_kit.hpp"
#include "cotforge/result.hpp"

namespace cotforge::engine {

/// Hard ceiling on model calls for one trial.  The last call is held in
/// reserve so the final-answer derivation can always run; only callers that
/// pass use_reserve may spend it.
class CallMeter {
public:
    explicit CallMeter(int max_calls) : max_calls_(max_calls) {}

    int used() const { return used_; }
    int remaining() const { return max_calls_ - used_; }
    bool can_spend(bool use_reserve) const {
        return use_reserve ? used_ < max_calls_ : used_ + 1 < max_calls_;
    }
    void spend() { ++used_; }

private:
    int max_calls_;
    int used_ = 0;
};

/// One successful model exchange.
struct Exchange {
    gateway::ModelRequest request;
    gateway::ModelResponse response;
    std::string fingerprint;
};

/// Binds a backend to a model id and the trial-wide call meter, turning
/// prompt bundles into requests.  Single-threaded: one client serves exactly
/// one trial.
class ModelClient {
public:
    ModelClient(std::shared_ptr<gateway::ModelBackend> backend, std::string model_id,
                CallMeter* meter)
        : backend_(std::move(backend)), model_id_(std::move(model_id)), meter_(meter) {}

    /// Issues one call.  Budget exhaustion surfaces as ErrorKind::budget
    /// without consuming the meter; failed backend calls still consume it.
    Result<Exchange> ask(const prompts::PromptBundle& bundle, bool use_reserve = false);

    const gateway::TokenUsage& total_usage() const { return total_usage_; }
    const std::string& model_id() const { return model_id_; }
    CallMeter& meter() { return *meter_; }

private:
    std::shared_ptr<gateway::ModelBackend> backend_;
    std::string model_id_;
    CallMeter* meter_;
    gateway::TokenUsage total_usage_;
};

/// Appends a transcript event for an exchange; callers attach the parsed
/// verdict or a structured note where the phase produces one.
void record_event(TranscriptSink* transcript, const std::string& phase,
                  const Exchange& exchange, std::optional<std::string> verdict = std::nullopt,
                  std::optional<std::string> note = std::nullopt);

} // namespace cotforge::engine
