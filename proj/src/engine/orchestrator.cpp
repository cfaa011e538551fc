#include "cotforge/engine/orchestrator.hpp"

namespace cotforge::engine {

Status RunBudget::validate() const {
    if (max_restarts < 0) {
        return Status(make_error(ErrorKind::config, "max_restarts must be non-negative"));
    }
    if (max_total_calls < 1) {
        return Status(make_error(ErrorKind::config, "max_total_calls must be at least 1"));
    }
    return step_budget.validate();
}

PipelineResult solve(const bench::Question& question, const std::string& model_id,
                     const RunBudget& budget,
                     std::shared_ptr<gateway::ModelBackend> backend,
                     const prompts::PromptKit& kit, TranscriptSink* transcript) {
    PipelineResult result;
    CallMeter meter(budget.max_total_calls);
    ModelClient client(std::move(backend), model_id, &meter);
    FlowTracker flow;
    (void)flow.advance(Event::start);

    auto settle = [&]() {
        result.total_usage = client.total_usage();
        result.calls_used = meter.used();
        result.flow_events = flow.history_names();
    };

    std::optional<std::string> directive;
    int chain_counter = 0;
    while (true) {
        ++chain_counter;
        ReasoningChain chain =
            build_chain(question, "chain-" + std::to_string(chain_counter), directive,
                        budget.step_budget, client, kit, transcript, &flow);
        result.chains.push_back(std::move(chain));

        const auto usable = views_of(result.chains, /*usable_only=*/true);
        if (usable.empty()) {
            // Every chain so far aborted; there is nothing to check or
            // finalize over.
            (void)flow.advance(Event::no_usable_chains);
            result.unparsed = true;
            settle();
            return result;
        }

        // The consistency check itself costs a call and must leave the
        // reserved final call untouched.
        if (!meter.can_spend(false)) {
            (void)flow.advance(Event::calls_exhausted);
            break;
        }
        ConsistencyOutcome outcome =
            check_consistency(question, usable, result.ledger, client, kit, transcript);
        result.consistency_degraded = result.consistency_degraded || outcome.degraded;

        if (outcome.finding.verdict == prompts::ConsistencyVerdict::finalize) {
            (void)flow.advance(Event::verdict_finalize);
            break;
        }
        if (result.restarts_used >= budget.max_restarts) {
            (void)flow.advance(Event::restarts_exhausted);
            break;
        }
        if (result.ledger.pending_empty()) {
            (void)flow.advance(Event::no_directives);
            break;
        }
        if (!meter.can_spend(false)) {
            (void)flow.advance(Event::calls_exhausted);
            break;
        }
        (void)flow.advance(Event::verdict_restart);
        directive = result.ledger.dequeue();
        ++result.restarts_used;
        (void)flow.advance(Event::directive_dequeued);
    }

    const auto usable = views_of(result.chains, /*usable_only=*/true);
    auto selection = derive_final(question, usable, client, kit, transcript);
    if (selection.ok()) {
        result.selection = selection.take();
        result.final_letter = result.selection->letter;
        result.eligible_chains = eligible_chain_ids(*result.selection, usable);
        (void)flow.advance(Event::final_derived);
    } else {
        result.unparsed = true;
        (void)flow.advance(Event::final_unparsed);
    }
    settle();
    return result;
}

} // namespace cotforge::engine
