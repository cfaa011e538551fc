#pragma once

#include <string>
#include <vector>

#include "cotforge/bench/question.hpp"
#include "cotforge/engine/client.hpp"
#include "cotforge/engine/ledger.hpp"
#include "cotforge/engine/transcript.hpp"
#include "cotforge/prompts/parsers.hpp"
#include "cotforge/prompts/prompt_kit.hpp"

namespace cotforge::engine {

struct ConsistencyOutcome {
    prompts::ConsistencyFinding finding;
    /// Directives the ledger actually accepted this round (post-dedup).
    std::vector<std::string> new_directives;
    /// True when a gateway or parse failure forced the finalize fallback.
    bool degraded = false;
};

/// Runs the global consistency check over the usable chains.  A restart
/// verdict turns each reported assumption into an assert/negate directive
/// pair, enqueued in report order; a finalize verdict leaves the ledger
/// untouched.  Gateway and parse failures degrade to finalize so a flaky
/// check never kills the trial.
ConsistencyOutcome check_consistency(const bench::Question& question,
                                     const std::vector<prompts::ChainView>& chains,
                                     AssumptionLedger& ledger, ModelClient& client,
                                     const prompts::PromptKit& kit,
                                     TranscriptSink* transcript);

/// Asks for the final cross-chain selection at temperature zero.  One
/// corrective re-ask is allowed; a second unparseable reply (or any gateway
/// error) is surfaced and the trial records no answer.  This call may spend
/// the reserved last call of the budget.
Result<prompts::FinalSelection> derive_final(const bench::Question& question,
                                             const std::vector<prompts::ChainView>& chains,
                                             ModelClient& client,
                                             const prompts::PromptKit& kit,
                                             TranscriptSink* transcript);

/// Chain ids that remain eligible after refutation bookkeeping: a chain
/// named on the left side of a REFUTED line is excluded no matter how high
/// its score.  The reported answer letter is recorded as-is either way; this
/// set is metadata for the report.
std::vector<std::string> eligible_chain_ids(const prompts::FinalSelection& selection,
                                            const std::vector<prompts::ChainView>& chains);

} // namespace cotforge::engine
