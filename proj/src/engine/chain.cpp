#include "cotforge/engine/chain.hpp"

namespace cotforge::engine {

const char* to_string(ChainStatus status) {
    switch (status) {
    case ChainStatus::completed: return "completed";
    case ChainStatus::step_limit_hit: return "step_limit_hit";
    case ChainStatus::aborted: return "aborted";
    }
    return "unknown";
}

prompts::ChainView ReasoningChain::view() const {
    prompts::ChainView view;
    view.id = chain_id;
    view.directive = directive;
    view.steps.reserve(steps.size());
    for (const auto& step : steps) {
        view.steps.push_back(prompts::ParsedStep{step.index, step.body});
    }
    return view;
}

Status StepBudget::validate() const {
    if (max_steps < 1) {
        return Status(make_error(ErrorKind::config, "max_steps must be at least 1"));
    }
    if (max_revisions < 0) {
        return Status(make_error(ErrorKind::config, "max_revisions must be non-negative"));
    }
    return Status::success();
}

std::vector<prompts::ChainView> views_of(const std::vector<ReasoningChain>& chains,
                                         bool usable_only) {
    std::vector<prompts::ChainView> views;
    views.reserve(chains.size());
    for (const auto& chain : chains) {
        if (usable_only && !chain.usable()) {
            continue;
        }
        views.push_back(chain.view());
    }
    return views;
}

} // namespace cotforge::engine
