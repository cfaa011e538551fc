#include "cotforge/engine/consistency.hpp"

#include <nlohmann/json.hpp>

namespace cotforge::engine {

namespace {

std::string finding_note(const prompts::ConsistencyFinding& finding, bool degraded) {
    nlohmann::json doc{
        {"assumptions", finding.assumptions},
        {"verdict", prompts::to_string(finding.verdict)},
        {"rationale", finding.rationale},
        {"degraded", degraded},
    };
    return doc.dump();
}

std::string selection_note(const prompts::FinalSelection& selection) {
    nlohmann::json scores = nlohmann::json::object();
    for (const auto& [id, score] : selection.chain_scores) {
        scores[id] = score;
    }
    nlohmann::json refuted = nlohmann::json::object();
    for (const auto& [loser, winner] : selection.refuted_by) {
        refuted[loser] = winner;
    }
    nlohmann::json doc{
        {"answer", std::string(1, selection.letter)},
        {"scores", scores},
        {"refuted_by", refuted},
    };
    return doc.dump();
}

ConsistencyOutcome degraded_outcome() {
    ConsistencyOutcome outcome;
    outcome.finding.verdict = prompts::ConsistencyVerdict::finalize;
    outcome.finding.rationale = "consistency check unavailable; finalizing";
    outcome.degraded = true;
    return outcome;
}

} // namespace

ConsistencyOutcome check_consistency(const bench::Question& question,
                                     const std::vector<prompts::ChainView>& chains,
                                     AssumptionLedger& ledger, ModelClient& client,
                                     const prompts::PromptKit& kit,
                                     TranscriptSink* transcript) {
    auto bundle = kit.render_consistency_prompt(question, chains);
    if (!bundle.ok()) {
        return degraded_outcome();
    }
    auto exchange = client.ask(bundle.value());
    if (!exchange.ok()) {
        return degraded_outcome();
    }
    auto finding = prompts::parse_consistency(exchange.value().response.text);
    if (!finding.ok()) {
        ConsistencyOutcome outcome = degraded_outcome();
        record_event(transcript, "consistency", exchange.value(), std::nullopt,
                     finding_note(outcome.finding, true));
        return outcome;
    }

    ConsistencyOutcome outcome;
    outcome.finding = finding.take();
    record_event(transcript, "consistency", exchange.value(),
                 std::string(prompts::to_string(outcome.finding.verdict)),
                 finding_note(outcome.finding, false));

    if (outcome.finding.verdict == prompts::ConsistencyVerdict::restart) {
        for (const auto& assumption : outcome.finding.assumptions) {
            const std::string assert_directive = "Assume: " + assumption;
            const std::string negate_directive = "Assume the opposite: " + assumption;
            if (ledger.enqueue(assert_directive)) {
                outcome.new_directives.push_back(assert_directive);
            }
            if (ledger.enqueue(negate_directive)) {
                outcome.new_directives.push_back(negate_directive);
            }
        }
    }
    return outcome;
}

Result<prompts::FinalSelection> derive_final(const bench::Question& question,
                                             const std::vector<prompts::ChainView>& chains,
                                             ModelClient& client,
                                             const prompts::PromptKit& kit,
                                             TranscriptSink* transcript) {
    auto bundle = kit.render_final_prompt(question, chains);
    if (!bundle.ok()) {
        return bundle.error();
    }
    auto exchange = client.ask(bundle.value(), /*use_reserve=*/true);
    if (!exchange.ok()) {
        return exchange.error();
    }
    auto selection = prompts::parse_final(exchange.value().response.text, question);
    if (selection.ok()) {
        record_event(transcript, "final", exchange.value(),
                     std::string(1, selection.value().letter),
                     selection_note(selection.value()));
        return selection.take();
    }
    record_event(transcript, "final", exchange.value());

    auto retry = bundle.take();
    prompts::PromptKit::append_format_reminder(retry, "final");
    auto second = client.ask(retry, /*use_reserve=*/true);
    if (!second.ok()) {
        return second.error();
    }
    auto reparsed = prompts::parse_final(second.value().response.text, question);
    if (!reparsed.ok()) {
        record_event(transcript, "reask_final", second.value());
        return reparsed.error();
    }
    record_event(transcript, "reask_final", second.value(),
                 std::string(1, reparsed.value().letter), selection_note(reparsed.value()));
    return reparsed.take();
}

std::vector<std::string> eligible_chain_ids(const prompts::FinalSelection& selection,
                                            const std::vector<prompts::ChainView>& chains) {
    std::vector<std::string> eligible;
    eligible.reserve(chains.size());
    for (const auto& chain : chains) {
        if (selection.refuted_by.count(chain.id) == 0) {
            eligible.push_back(chain.id);
        }
    }
    return eligible;
}

} // namespace cotforge::engine
