#pragma once

#include <optional>
#include <string>

#include "cotforge/bench/question.hpp"
#include "cotforge/engine/chain.hpp"
#include "cotforge/engine/client.hpp"
#include "cotforge/engine/flow.hpp"
#include "cotforge/engine/transcript.hpp"
#include "cotforge/prompts/prompt_kit.hpp"

namespace cotforge::engine {

/// Asks the review gate to judge one candidate step and parses the verdict.
/// Unparseable verdicts earn one corrective re-ask; a second failure (or any
/// gateway error) surfaces as an error and the caller aborts the chain.
Result<prompts::Verdict> gate_step(const bench::Question& question,
                                   const ReasoningChain& chain, int candidate_index,
                                   const std::string& candidate_body, ModelClient& client,
                                   const prompts::PromptKit& kit, TranscriptSink* transcript);

/// Builds one reasoning chain under the given directive: drafts steps,
/// gates each through the reviewer, revises rejected steps up to the budget,
/// and stops on the termination sentinel, the step ceiling, or the call
/// budget.  Gateway and format failures mark the chain aborted; the partial
/// chain is still returned.  Flow events are reported through `flow` when
/// provided.
ReasoningChain build_chain(const bench::Question& question, const std::string& chain_id,
                           const std::optional<std::string>& directive,
                           const StepBudget& budget, ModelClient& client,
                           const prompts::PromptKit& kit, TranscriptSink* transcript,
                           FlowTracker* flow = nullptr);

} // namespace cotforge::engine
