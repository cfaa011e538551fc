#include "cotforge/engine/reasoning.hpp"

namespace cotforge::engine {

namespace {

std::vector<prompts::ParsedStep> prior_of(const ReasoningChain& chain) {
    std::vector<prompts::ParsedStep> prior;
    prior.reserve(chain.steps.size());
    for (const auto& step : chain.steps) {
        prior.push_back(prompts::ParsedStep{step.index, step.body});
    }
    return prior;
}

void fire(FlowTracker* flow, Event event) {
    if (flow != nullptr) {
        // The engine only emits events along table edges; a rejection here
        // indicates an engine bug, which the flow tests pin down directly.
        (void)flow->advance(event);
    }
}

} // namespace

Result<prompts::Verdict> gate_step(const bench::Question& question,
                                   const ReasoningChain& chain, int candidate_index,
                                   const std::string& candidate_body, ModelClient& client,
                                   const prompts::PromptKit& kit, TranscriptSink* transcript) {
    auto bundle = kit.render_feedback_prompt(
        question, prior_of(chain), prompts::ParsedStep{candidate_index, candidate_body});
    if (!bundle.ok()) {
        return bundle.error();
    }

    auto exchange = client.ask(bundle.value());
    if (!exchange.ok()) {
        return exchange.error();
    }
    auto verdict = prompts::parse_verdict(exchange.value().response.text);
    record_event(transcript, "feedback", exchange.value(),
                 verdict.ok() ? std::optional<std::string>(verdict.value().passed ? "VALID"
                                                                                  : "ISSUES")
                              : std::nullopt);
    if (verdict.ok()) {
        return verdict.take();
    }

    // One corrective re-ask, then the failure stands.
    auto retry = bundle.take();
    prompts::PromptKit::append_format_reminder(retry, "verdict");
    auto second = client.ask(retry);
    if (!second.ok()) {
        return second.error();
    }
    auto reparsed = prompts::parse_verdict(second.value().response.text);
    record_event(transcript, "reask_feedback", second.value(),
                 reparsed.ok() ? std::optional<std::string>(
                                     reparsed.value().passed ? "VALID" : "ISSUES")
                               : std::nullopt);
    if (reparsed.ok()) {
        return reparsed.take();
    }
    return reparsed.error();
}

ReasoningChain build_chain(const bench::Question& question, const std::string& chain_id,
                           const std::optional<std::string>& directive,
                           const StepBudget& budget, ModelClient& client,
                           const prompts::PromptKit& kit, TranscriptSink* transcript,
                           FlowTracker* flow) {
    ReasoningChain chain;
    chain.chain_id = chain_id;
    chain.directive = directive;

    const gateway::TokenUsage usage_before = client.total_usage();
    const int calls_before = client.meter().used();

    auto finish = [&](ChainStatus status, std::optional<Error> error,
                      Event event) -> ReasoningChain {
        chain.status = status;
        chain.abort_error = std::move(error);
        chain.calls_used = client.meter().used() - calls_before;
        const auto& after = client.total_usage();
        chain.usage.prompt_tokens = after.prompt_tokens - usage_before.prompt_tokens;
        chain.usage.completion_tokens =
            after.completion_tokens - usage_before.completion_tokens;
        chain.usage.calls = after.calls - usage_before.calls;
        fire(flow, event);
        return chain;
    };

    while (true) {
        if (static_cast<int>(chain.steps.size()) >= budget.max_steps) {
            return finish(ChainStatus::step_limit_hit, std::nullopt, Event::step_limit);
        }
        const int next_index = static_cast<int>(chain.steps.size()) + 1;
        const auto prior = prior_of(chain);

        auto bundle = kit.render_step_prompt(question, prior, directive);
        if (!bundle.ok()) {
            return finish(ChainStatus::aborted, bundle.error(), Event::chain_aborted);
        }

        auto exchange = client.ask(bundle.value());
        if (!exchange.ok()) {
            if (exchange.error().kind == ErrorKind::budget) {
                return finish(ChainStatus::step_limit_hit, std::nullopt, Event::step_limit);
            }
            return finish(ChainStatus::aborted, exchange.error(), Event::chain_aborted);
        }
        Exchange current = exchange.take();
        record_event(transcript, "step", current);

        bool terminates = prompts::detect_termination(current.response.text);
        std::string content = prompts::strip_termination(current.response.text);
        if (terminates && content.empty()) {
            return finish(ChainStatus::completed, std::nullopt, Event::chain_completed);
        }

        auto parsed = prompts::parse_step(content, next_index);
        if (!parsed.ok()) {
            auto retry = bundle.take();
            prompts::PromptKit::append_format_reminder(retry, "step");
            auto second = client.ask(retry);
            if (!second.ok()) {
                if (second.error().kind == ErrorKind::budget) {
                    return finish(ChainStatus::step_limit_hit, std::nullopt,
                                  Event::step_limit);
                }
                return finish(ChainStatus::aborted, second.error(), Event::chain_aborted);
            }
            current = second.take();
            record_event(transcript, "reask_step", current);
            terminates = prompts::detect_termination(current.response.text);
            content = prompts::strip_termination(current.response.text);
            if (terminates && content.empty()) {
                return finish(ChainStatus::completed, std::nullopt, Event::chain_completed);
            }
            parsed = prompts::parse_step(content, next_index);
            if (!parsed.ok()) {
                return finish(ChainStatus::aborted, parsed.error(), Event::chain_aborted);
            }
        }

        ReasoningStep step;
        step.index = next_index;
        step.body = parsed.value().body;
        fire(flow, Event::step_drafted);

        // Gate the candidate; rejected candidates are revised until the
        // revision budget runs out, at which point the last draft is accepted
        // with the exhausted flag set.
        bool accepted = false;
        while (!accepted) {
            auto verdict =
                gate_step(question, chain, step.index, step.body, client, kit, transcript);
            if (!verdict.ok()) {
                if (verdict.error().kind == ErrorKind::budget) {
                    // The drafted candidate was never judged; drop it.
                    return finish(ChainStatus::step_limit_hit, std::nullopt,
                                  Event::step_limit);
                }
                return finish(ChainStatus::aborted, verdict.error(), Event::chain_aborted);
            }
            step.verdict_history.push_back(verdict.value());
            if (verdict.value().passed) {
                fire(flow, Event::step_accepted);
                chain.steps.push_back(step);
                accepted = true;
                break;
            }
            if (step.revision_count >= budget.max_revisions) {
                step.exhausted = true;
                fire(flow, Event::step_accepted);
                chain.steps.push_back(step);
                accepted = true;
                break;
            }
            fire(flow, Event::step_rejected);

            auto revision_bundle = kit.render_step_prompt(question, prior, directive);
            if (!revision_bundle.ok()) {
                return finish(ChainStatus::aborted, revision_bundle.error(),
                              Event::chain_aborted);
            }
            prompts::PromptKit::append_revision_context(
                revision_bundle.value(), prompts::ParsedStep{step.index, step.body},
                verdict.value().critique);

            auto revised = client.ask(revision_bundle.value());
            if (!revised.ok()) {
                if (revised.error().kind == ErrorKind::budget) {
                    // The rejected draft stays out of the chain.
                    return finish(ChainStatus::step_limit_hit, std::nullopt,
                                  Event::step_limit);
                }
                return finish(ChainStatus::aborted, revised.error(), Event::chain_aborted);
            }
            Exchange revision = revised.take();
            record_event(transcript, "revision", revision);

            bool revision_terminates = prompts::detect_termination(revision.response.text);
            std::string revision_content =
                prompts::strip_termination(revision.response.text);
            if (revision_terminates && revision_content.empty()) {
                // The model declined to revise and closed the chain; the
                // rejected draft is abandoned.
                return finish(ChainStatus::completed, std::nullopt, Event::chain_completed);
            }

            auto reparsed = prompts::parse_step(revision_content, step.index);
            if (!reparsed.ok()) {
                auto retry = revision_bundle.take();
                prompts::PromptKit::append_format_reminder(retry, "step");
                auto second = client.ask(retry);
                if (!second.ok()) {
                    if (second.error().kind == ErrorKind::budget) {
                        return finish(ChainStatus::step_limit_hit, std::nullopt,
                                      Event::step_limit);
                    }
                    return finish(ChainStatus::aborted, second.error(),
                                  Event::chain_aborted);
                }
                revision = second.take();
                record_event(transcript, "reask_step", revision);
                revision_terminates = prompts::detect_termination(revision.response.text);
                revision_content = prompts::strip_termination(revision.response.text);
                if (revision_terminates && revision_content.empty()) {
                    return finish(ChainStatus::completed, std::nullopt,
                                  Event::chain_completed);
                }
                reparsed = prompts::parse_step(revision_content, step.index);
                if (!reparsed.ok()) {
                    return finish(ChainStatus::aborted, reparsed.error(),
                                  Event::chain_aborted);
                }
            }
            step.body = reparsed.value().body;
            ++step.revision_count;
            terminates = revision_terminates;
            fire(flow, Event::step_drafted);
        }

        if (terminates) {
            return finish(ChainStatus::completed, std::nullopt, Event::chain_completed);
        }
    }
}

} // namespace cotforge::engine
