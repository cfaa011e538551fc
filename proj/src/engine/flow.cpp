#include "cotforge/engine/flow.hpp"

namespace cotforge::engine {

const char* to_string(State state) {
    switch (state) {
    case State::init: return "init";
    case State::generating: return "generating";
    case State::gating: return "gating";
    case State::checking: return "checking";
    case State::restarting: return "restarting";
    case State::finalizing: return "finalizing";
    case State::done: return "done";
    }
    return "unknown";
}

const char* to_string(Event event) {
    switch (event) {
    case Event::start: return "start";
    case Event::step_drafted: return "step_drafted";
    case Event::step_accepted: return "step_accepted";
    case Event::step_rejected: return "step_rejected";
    case Event::chain_completed: return "chain_completed";
    case Event::step_limit: return "step_limit";
    case Event::chain_aborted: return "chain_aborted";
    case Event::verdict_restart: return "verdict_restart";
    case Event::verdict_finalize: return "verdict_finalize";
    case Event::no_directives: return "no_directives";
    case Event::restarts_exhausted: return "restarts_exhausted";
    case Event::calls_exhausted: return "calls_exhausted";
    case Event::no_usable_chains: return "no_usable_chains";
    case Event::directive_dequeued: return "directive_dequeued";
    case Event::final_derived: return "final_derived";
    case Event::final_unparsed: return "final_unparsed";
    }
    return "unknown";
}

Result<State> transition(State state, Event event) {
    switch (state) {
    case State::init:
        if (event == Event::start) return State::generating;
        break;
    case State::generating:
        switch (event) {
        case Event::step_drafted: return State::gating;
        case Event::chain_completed: return State::checking;
        case Event::step_limit: return State::checking;
        case Event::chain_aborted: return State::checking;
        default: break;
        }
        break;
    case State::gating:
        switch (event) {
        case Event::step_accepted: return State::generating;
        case Event::step_rejected: return State::generating;
        case Event::step_limit: return State::checking;
        case Event::chain_aborted: return State::checking;
        default: break;
        }
        break;
    case State::checking:
        switch (event) {
        case Event::verdict_restart: return State::restarting;
        case Event::verdict_finalize: return State::finalizing;
        case Event::no_directives: return State::finalizing;
        case Event::restarts_exhausted: return State::finalizing;
        case Event::calls_exhausted: return State::finalizing;
        case Event::no_usable_chains: return State::done;
        default: break;
        }
        break;
    case State::restarting:
        if (event == Event::directive_dequeued) return State::generating;
        break;
    case State::finalizing:
        switch (event) {
        case Event::final_derived: return State::done;
        case Event::final_unparsed: return State::done;
        default: break;
        }
        break;
    case State::done:
        break;
    }
    return make_error(ErrorKind::illegal_transition,
                      std::string("illegal transition: state '") + to_string(state) +
                          "' does not accept event '" + to_string(event) + "'");
}

Status FlowTracker::advance(Event event) {
    auto next = transition(state_, event);
    if (!next.ok()) {
        return Status(next.error());
    }
    state_ = next.value();
    history_.push_back(event);
    return Status::success();
}

std::vector<std::string> FlowTracker::history_names() const {
    std::vector<std::string> names;
    names.reserve(history_.size());
    for (Event event : history_) {
        names.emplace_back(to_string(event));
    }
    return names;
}

} // namespace cotforge::engine
