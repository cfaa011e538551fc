#include "cotforge/engine/client.hpp"

namespace cotforge::engine {

Result<Exchange> ModelClient::ask(const prompts::PromptBundle& bundle, bool use_reserve) {
    if (!meter_->can_spend(use_reserve)) {
        return make_error(ErrorKind::budget,
                          "call budget exhausted (" + std::to_string(meter_->used()) +
                              " calls used)");
    }

    Exchange exchange;
    exchange.request.model_id = model_id_;
    if (!bundle.system_text.empty()) {
        exchange.request.messages.push_back(
            gateway::ChatMessage{gateway::Role::system, bundle.system_text});
    }
    exchange.request.messages.push_back(
        gateway::ChatMessage{gateway::Role::user, bundle.user_text});
    exchange.request.params = bundle.params;

    meter_->spend();
    auto response = backend_->complete(exchange.request);
    if (!response.ok()) {
        return response.error();
    }
    exchange.response = response.take();
    exchange.fingerprint = gateway::request_fingerprint(exchange.request);
    total_usage_.add(exchange.response);
    return exchange;
}

void record_event(TranscriptSink* transcript, const std::string& phase,
                  const Exchange& exchange, std::optional<std::string> verdict,
                  std::optional<std::string> note) {
    if (transcript == nullptr) {
        return;
    }
    TranscriptEvent event;
    event.phase = phase;
    event.fingerprint = exchange.fingerprint;
    event.response_text = exchange.response.text;
    event.verdict = std::move(verdict);
    event.note = std::move(note);
    event.ts_ms = now_ms();
    transcript->append(event);
}

} // namespace cotforge::engine
