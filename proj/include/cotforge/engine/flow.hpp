#pragma once

#include <string>
#include <vector>

#include "cotforge/result.hpp"

namespace cotforge::engine {

/// Pipeline states for one trial, from first step to final answer.
enum class State {
    init,
    generating,
    gating,
    checking,
    restarting,
    finalizing,
    done,
};

enum class Event {
    start,
    step_drafted,
    step_accepted,
    step_rejected,
    chain_completed,
    step_limit,
    chain_aborted,
    verdict_restart,
    verdict_finalize,
    no_directives,
    restarts_exhausted,
    calls_exhausted,
    no_usable_chains,
    directive_dequeued,
    final_derived,
    final_unparsed,
};

const char* to_string(State state);
const char* to_string(Event event);

/// Total transition table; illegal (state, event) pairs are errors, never
/// silent self-loops.
Result<State> transition(State state, Event event);

/// Walks the table and keeps the event trace for assertions and debugging.
class FlowTracker {
public:
    Status advance(Event event);

    State state() const { return state_; }
    const std::vector<Event>& history() const { return history_; }
    std::vector<std::string> history_names() const;

private:
    State state_ = State::init;
    std::vector<Event> history_;
};

} // namespace cotforge::engine
