#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotforge/bench/question.hpp"
#include "cotforge/engine/chain.hpp"
#include "cotforge/engine/client.hpp"
#include "cotforge/engine/consistency.hpp"
#include "cotforge/engine/flow.hpp"
#include "cotforge/engine/ledger.hpp"
#include "cotforge/engine/reasoning.hpp"
#include "cotforge/engine/transcript.hpp"
#include "cotforge/gateway/backend.hpp"
#include "cotforge/prompts/prompt_kit.hpp"

namespace cotforge::engine {

/// Budgets for one full trial.
struct RunBudget {
    int max_restarts = 3;
    int max_total_calls = 120;
    StepBudget step_budget;
    Status validate() const;
};

/// Everything one trial produced.  final_letter is set exactly when the
/// trial is not unparsed.
struct PipelineResult {
    std::optional<char> final_letter;
    bool unparsed = false;
    std::optional<prompts::FinalSelection> selection;
    std::vector<std::string> eligible_chains;
    std::vector<ReasoningChain> chains;
    int restarts_used = 0;
    bool consistency_degraded = false;
    AssumptionLedger ledger;
    gateway::TokenUsage total_usage;
    int calls_used = 0;
    std::vector<std::string> flow_events;
};

/// Runs the full pipeline for one question: build a chain, run the
/// consistency check, restart under queued directives while budget remains,
/// then derive the final answer across all usable chains.
PipelineResult solve(const bench::Question& question, const std::string& model_id,
                     const RunBudget& budget,
                     std::shared_ptr<gateway::ModelBackend> backend,
                     const prompts::PromptKit& kit, TranscriptSink* transcript);

} // namespace cotforge::engine
