#include "cotforge/prompts/prompt_kit.hpp"

#include <fstream>
#include <sstream>

namespace cotforge::prompts {

namespace {

Result<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        return make_error(ErrorKind::config, "cannot read template " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string render_options(const bench::Question& question) {
    std::string out;
    for (const auto& [letter, text] : question.options) {
        out += letter;
        out += ". ";
        out += text;
        out += '\n';
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::string render_steps(const std::vector<ParsedStep>& steps) {
    if (steps.empty()) return "none";
    std::string out;
    for (const auto& step : steps) {
        out += "Step " + std::to_string(step.index) + ": " + step.body + "\n";
    }
    out.pop_back();
    return out;
}

std::string render_chains(const std::vector<ChainView>& chains) {
    std::string out;
    for (const auto& chain : chains) {
        out += "Chain " + chain.id + " (operating assumption: " +
               chain.directive.value_or("none") + "):\n";
        out += render_steps(chain.steps);
        out += "\n\n";
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

} // namespace

Result<PromptLibrary> PromptLibrary::load_dir(const std::filesystem::path& dir) {
    PromptLibrary lib;
    const struct {
        const char* file;
        std::string PromptLibrary::*member;
    } files[] = {
        {"step_system.txt", &PromptLibrary::step_system},
        {"step_user.txt", &PromptLibrary::step_user},
        {"feedback_system.txt", &PromptLibrary::feedback_system},
        {"feedback_user.txt", &PromptLibrary::feedback_user},
        {"consistency_system.txt", &PromptLibrary::consistency_system},
        {"consistency_user.txt", &PromptLibrary::consistency_user},
        {"final_system.txt", &PromptLibrary::final_system},
        {"final_user.txt", &PromptLibrary::final_user},
    };
    for (const auto& entry : files) {
        auto content = read_file(dir / entry.file);
        if (!content.ok()) return content.error();
        lib.*(entry.member) = content.take();
    }
    return lib;
}

Result<std::string> PromptLibrary::render(const std::string& tpl,
                                          const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tpl.size());
    std::size_t pos = 0;
    while (pos < tpl.size()) {
        std::size_t open = tpl.find("{{", pos);
        if (open == std::string::npos) {
            out.append(tpl, pos, tpl.size() - pos);
            break;
        }
        out.append(tpl, pos, open - pos);
        std::size_t close = tpl.find("}}", open + 2);
        if (close == std::string::npos)
            return make_error(ErrorKind::config, "unterminated placeholder in template");
        const std::string name = tpl.substr(open + 2, close - open - 2);
        auto it = values.find(name);
        if (it == values.end())
            return make_error(ErrorKind::config, "unknown placeholder {{" + name + "}}");
        out += it->second;
        pos = close + 2;
    }
    return out;
}

PromptKit::PromptKit(PromptLibrary library, SamplingProfiles profiles)
    : library_(std::move(library)), profiles_(profiles) {}

Result<PromptBundle> PromptKit::render_step_prompt(
    const bench::Question& question, const std::vector<ParsedStep>& prior_steps,
    const std::optional<std::string>& directive) const {
    std::string directive_block;
    if (directive) {
        directive_block = "\nOperating assumption: " + *directive +
                          "\nKeep every step consistent with this operating assumption.\n";
    }
    auto user = PromptLibrary::render(
        library_.step_user,
        {{"question", question.text},
         {"options", render_options(question)},
         {"prior_steps", render_steps(prior_steps)},
         {"next_index", std::to_string(prior_steps.size() + 1)},
         {"directive_block", directive_block}});
    if (!user.ok()) return user.error();
    const bool restarted_first = directive.has_value() && prior_steps.empty();
    return PromptBundle{
        .system_text = library_.step_system,
        .user_text = user.take(),
        .params = restarted_first ? profiles_.step_restart_first : profiles_.step,
    };
}

Result<PromptBundle> PromptKit::render_feedback_prompt(const bench::Question& question,
                                                       const std::vector<ParsedStep>& prior_steps,
                                                       const ParsedStep& candidate) const {
    auto user = PromptLibrary::render(
        library_.feedback_user,
        {{"question", question.text},
         {"options", render_options(question)},
         {"prior_steps", render_steps(prior_steps)},
         {"candidate_index", std::to_string(candidate.index)},
         {"candidate_body", candidate.body}});
    if (!user.ok()) return user.error();
    return PromptBundle{
        .system_text = library_.feedback_system,
        .user_text = user.take(),
        .params = profiles_.feedback,
    };
}

Result<PromptBundle> PromptKit::render_consistency_prompt(
    const bench::Question& question, const std::vector<ChainView>& chains) const {
    auto user = PromptLibrary::render(library_.consistency_user,
                                      {{"question", question.text},
                                       {"options", render_options(question)},
                                       {"chains", render_chains(chains)}});
    if (!user.ok()) return user.error();
    return PromptBundle{
        .system_text = library_.consistency_system,
        .user_text = user.take(),
        .params = profiles_.consistency,
    };
}

Result<PromptBundle> PromptKit::render_final_prompt(const bench::Question& question,
                                                    const std::vector<ChainView>& chains) const {
    auto user = PromptLibrary::render(library_.final_user,
                                      {{"question", question.text},
                                       {"options", render_options(question)},
                                       {"chains", render_chains(chains)}});
    if (!user.ok()) return user.error();
    return PromptBundle{
        .system_text = library_.final_system,
        .user_text = user.take(),
        .params = profiles_.final_derivation,
    };
}

void PromptKit::append_revision_context(PromptBundle& bundle, const ParsedStep& rejected,
                                        const std::string& critique) {
    bundle.user_text += "\n\nYour previous attempt at Step " + std::to_string(rejected.index) +
                        " was rejected by review.\nRejected attempt: " + rejected.body +
                        "\nCritique: " + critique + "\nProduce a corrected Step " +
                        std::to_string(rejected.index) + " that resolves the critique.";
}

void PromptKit::append_format_reminder(PromptBundle& bundle, const std::string& kind) {
    std::string reminder = "\n\nREMINDER: your previous reply did not match the required format. ";
    if (kind == "step") {
        reminder += "Reply with exactly one step line: Step <number>: <reasoning>, "
                    "or the single token NO_MORE_STEPS.";
    } else if (kind == "verdict") {
        reminder += "Reply with the single line VALID, or a line starting with "
                    "ISSUES: followed by your critique.";
    } else if (kind == "consistency") {
        reminder += "Reply with optional ASSUMPTION: lines, then VERDICT: RESTART or "
                    "VERDICT: FINALIZE, then RATIONALE: <text>.";
    } else {
        reminder += "Reply with SCORE lines, optional REFUTED lines, then ANSWER: "
                    "<option letter> and JUSTIFICATION: <text>.";
    }
    bundle.user_text += reminder;
}

} // namespace cotforge::prompts
