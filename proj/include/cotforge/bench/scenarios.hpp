#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cotforge/gateway/backend.hpp"
#include "cotforge/result.hpp"

namespace cotforge::bench {

/// Canned reply scripts for the bundled questions ("q5" and "q9"), five
/// trials each.  Together the ten trials cover the interesting pipeline
/// paths: plain runs, revisions, restarts, refutations, sentinel-in-content,
/// revision exhaustion, unparseable finals, step limits, and ledger
/// starvation.  The expected correctness grid is q5 = 1,1,1,0,1 and
/// q9 = 1,0,1,0,1.
Result<std::vector<std::string>> scenario_script(const std::string& question_id, int trial);

/// The script wrapped in a FIFO scripted backend.
Result<std::shared_ptr<gateway::ScriptedBackend>> scenario_backend(
    const std::string& question_id, int trial);

/// Expected per-trial correctness for the scenario scripts, trial-ordered.
std::vector<bool> scenario_expected(const std::string& question_id);

} // namespace cotforge::bench
