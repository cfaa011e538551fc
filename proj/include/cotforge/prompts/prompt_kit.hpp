#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cotforge/bench/question.hpp"
#include "cotforge/gateway/types.hpp"
#include "cotforge/prompts/parsers.hpp"

namespace cotforge::prompts {

/// One ready-to-send prompt: system text, user text, and the sampling
/// profile the call must use.
struct PromptBundle {
    std::string system_text;
    std::string user_text;
    gateway::SamplingParams params;
};

/// A chain as the consistency and final prompts see it.
struct ChainView {
    std::string id;
    std::optional<std::string> directive;
    std::vector<ParsedStep> steps;
};

/// Per-phase sampling configuration. step_restart_first applies only to the
/// first step of a chain built under a directive.
struct SamplingProfiles {
    gateway::SamplingParams step{.temperature = 1.0, .presence_penalty = 0.3};
    gateway::SamplingParams step_restart_first{.temperature = 1.2, .presence_penalty = 0.3};
    gateway::SamplingParams feedback{.temperature = 0.2, .presence_penalty = 0.0};
    gateway::SamplingParams consistency{.temperature = 0.3, .presence_penalty = 0.0};
    gateway::SamplingParams final_derivation{.temperature = 0.0, .presence_penalty = 0.0};
};

/// The eight template files (four prompts, system + user each) loaded from
/// a directory. Placeholders use {{name}} markers.
class PromptLibrary {
public:
    static Result<PromptLibrary> load_dir(const std::filesystem::path& dir);

    /// Substitutes placeholders; unknown markers in the template are a
    /// config error so edited templates fail fast.
    static Result<std::string> render(const std::string& tpl,
                                      const std::map<std::string, std::string>& values);

    std::string step_system;
    std::string step_user;
    std::string feedback_system;
    std::string feedback_user;
    std::string consistency_system;
    std::string consistency_user;
    std::string final_system;
    std::string final_user;
};

/// Renders the four prompt kinds from a loaded library. Pure and shareable
/// across worker threads.
class PromptKit {
public:
    PromptKit(PromptLibrary library, SamplingProfiles profiles = {});

    Result<PromptBundle> render_step_prompt(const bench::Question& question,
                                            const std::vector<ParsedStep>& prior_steps,
                                            const std::optional<std::string>& directive) const;

    Result<PromptBundle> render_feedback_prompt(const bench::Question& question,
                                                const std::vector<ParsedStep>& prior_steps,
                                                const ParsedStep& candidate) const;

    Result<PromptBundle> render_consistency_prompt(const bench::Question& question,
                                                   const std::vector<ChainView>& chains) const;

    Result<PromptBundle> render_final_prompt(const bench::Question& question,
                                             const std::vector<ChainView>& chains) const;

    /// Appends the rejected attempt and its critique to a step prompt so the
    /// next call produces a revision.
    static void append_revision_context(PromptBundle& bundle, const ParsedStep& rejected,
                                        const std::string& critique);

    /// Appends a format reminder for a re-ask after an unparseable reply.
    /// kind is one of "step", "verdict", "consistency", "final".
    static void append_format_reminder(PromptBundle& bundle, const std::string& kind);

    const SamplingProfiles& profiles() const { return profiles_; }

private:
    PromptLibrary library_;
    SamplingProfiles profiles_;
};

} // namespace cotforge::prompts
