#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cotforge/gateway/types.hpp"
#include "cotforge/prompts/parsers.hpp"
#include "cotforge/prompts/prompt_kit.hpp"
#include "cotforge/result.hpp"

namespace cotforge::engine {

/// One accepted (or exhaustion-accepted) reasoning step.
struct ReasoningStep {
    int index = 0;
    std::string body;
    /// Number of revision drafts generated for this index.
    int revision_count = 0;
    /// Every gate verdict observed for this index, in order.
    std::vector<prompts::Verdict> verdict_history;
    /// True when the step was accepted only because the revision budget ran
    /// out while the gate still objected.
    bool exhausted = false;
};

enum class ChainStatus {
    /// The model emitted the termination sentinel.
    completed,
    /// The step ceiling or the call budget cut the chain short; the steps
    /// gathered so far remain usable downstream.
    step_limit_hit,
    /// A gateway or format failure killed the chain; it is excluded from the
    /// consistency check and the final derivation.
    aborted,
};

const char* to_string(ChainStatus status);

struct ReasoningChain {
    std::string chain_id;
    /// Operating assumption this chain was (re)started under, if any.
    std::optional<std::string> directive;
    std::vector<ReasoningStep> steps;
    ChainStatus status = ChainStatus::completed;
    gateway::TokenUsage usage;
    /// Set iff status == aborted.
    std::optional<Error> abort_error;
    /// Model calls issued while building this chain (steps, revisions,
    /// verdicts, re-asks).
    int calls_used = 0;

    bool usable() const { return status != ChainStatus::aborted; }
    prompts::ChainView view() const;
};

/// Per-chain generation limits.
struct StepBudget {
    int max_steps = 10;
    int max_revisions = 2;
    Status validate() const;
};

std::vector<prompts::ChainView> views_of(const std::vector<ReasoningChain>& chains,
                                         bool usable_only);

} // namespace cotforge::engine
