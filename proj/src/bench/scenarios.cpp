#include "cotforge/bench/scenarios.hpp"

namespace cotforge::bench {

namespace {

constexpr const char* kFinalize = "VERDICT: FINALIZE\nRATIONALE: the chains hold together";

std::vector<std::string> q5_script(int trial) {
    switch (trial) {
    case 1: // plain two-step run
        return {
            "Step 1: Peter is in cardiac arrest and Paul is the only person present.",
            "VALID",
            "Step 2: A childhood grudge over a card collection does not override a "
            "life-or-death duty.",
            "VALID",
            "NO_MORE_STEPS",
            kFinalize,
            "SCORE chain-1: 9\nANSWER: B\nJUSTIFICATION: the only bystander performs CPR",
        };
    case 2: // one rejected draft, revised and accepted
        return {
            "Step 1: Paul checks his message history first.",
            "ISSUES: message history is irrelevant during an active cardiac arrest",
            "Step 1: Paul must start CPR within seconds for Peter to survive.",
            "VALID",
            "NO_MORE_STEPS",
            kFinalize,
            "SCORE chain-1: 8\nANSWER: B\nJUSTIFICATION: urgency settles it",
        };
    case 3: // restart under a directive, then finalize
        return {
            "Step 1: The old grudge might stop Paul from acting.",
            "VALID",
            "NO_MORE_STEPS",
            "ASSUMPTION: The childhood grudge still dominates Paul's feelings\n"
            "VERDICT: RESTART\nRATIONALE: the grudge's actual weight is untested",
            "Step 1: Even under a dominant grudge, the social duty to save a life "
            "compels rescue.",
            "VALID",
            "NO_MORE_STEPS",
            kFinalize,
            "SCORE chain-1: 5\nSCORE chain-2: 9\nANSWER: B\n"
            "JUSTIFICATION: rescue duty prevails under both assumptions",
        };
    case 4: // refutation flips the outcome to a wrong letter
        return {
            "Step 1: Duty points to immediate CPR.",
            "VALID",
            "NO_MORE_STEPS",
            "ASSUMPTION: Paul never moved past the verbal attack\n"
            "VERDICT: RESTART\nRATIONALE: lingering resentment is unexplored",
            "Step 1: Permanent cloud receipts keep the wound fresh and Paul freezes.",
            "VALID",
            "NO_MORE_STEPS",
            kFinalize,
            "SCORE chain-1: 8\nSCORE chain-2: 6\nREFUTED chain-1 BY chain-2\n"
            "ANSWER: A\nJUSTIFICATION: the grudge outweighs the duty",
        };
    case 5: // sentinel arrives inside a content-bearing step
        return {
            "Step 1: Nothing in the history outweighs a life, so Paul helps. "
            "NO_MORE_STEPS",
            "VALID",
            kFinalize,
            "SCORE chain-1: 9\nANSWER: B\nJUSTIFICATION: a single decisive step suffices",
        };
    default:
        return {};
    }
}

std::vector<std::string> q9_script(int trial) {
    switch (trial) {
    case 1: { // revision budget exhausted, chain still finishes correctly
        return {
            "Step 1: The sandwiches are glued to the stick.",
            "ISSUES: duct tape touches only the top sandwich",
            "Step 1: All five sandwiches travel with the stick.",
            "ISSUES: only the top sandwich is taped to the stick",
            "Step 1: The walking stick matters more than the sandwiches.",
            "ISSUES: the step still ignores which sandwich is attached",
            "Step 2: Only the top sandwich is taped to the stick, so it alone leaves "
            "Room A. NO_MORE_STEPS",
            "VALID",
            kFinalize,
            "SCORE chain-1: 7\nANSWER: A\nJUSTIFICATION: four whole sandwiches stay in "
            "Room A and the taped one is no longer whole",
        };
    }
    case 2: // the final derivation never yields a letter
        return {
            "Step 1: Five sandwiches start in Room A.",
            "VALID",
            "NO_MORE_STEPS",
            kFinalize,
            "The taped sandwich is ruined, so none of the answers fit perfectly.",
            "I still cannot commit to a single letter.",
        };
    case 3: { // no sentinel: the step ceiling closes the chain
        std::vector<std::string> script;
        const char* bodies[] = {
            "Agatha stacks five single-slice ham sandwiches in Room A.",
            "She tapes the top surface of the uppermost sandwich to her stick.",
            "Duct tape bonds only that single top slice of bread.",
            "Lifting the stick lifts the taped sandwich with it.",
            "A sandwich dangling from tape is no longer a tidy whole sandwich.",
            "The four lower sandwiches are untouched and stay behind.",
            "Agatha walks out of Room A holding the stick.",
            "The taped sandwich travels with her toward Room B.",
            "Room A now holds four whole sandwiches and nothing else changed.",
            "Room B gains only the taped, no-longer-whole sandwich.",
        };
        for (int i = 0; i < 10; ++i) {
            script.push_back("Step " + std::to_string(i + 1) + ": " + bodies[i]);
            script.push_back("VALID");
        }
        script.push_back(kFinalize);
        script.push_back("SCORE chain-1: 8\nANSWER: A\nJUSTIFICATION: four whole in Room "
                         "A, none in Room B");
        return script;
    }
    case 4: // repeated assumption starves the ledger after two restarts
        return {
            "Step 1: The taped sandwich might survive the walk intact.",
            "VALID",
            "NO_MORE_STEPS",
            "ASSUMPTION: The taped sandwich stays whole\n"
            "VERDICT: RESTART\nRATIONALE: wholeness of the taped sandwich is pivotal",
            "Step 1: If the taped sandwich stays whole, Room B gains one whole sandwich.",
            "VALID",
            "NO_MORE_STEPS",
            "ASSUMPTION: The taped sandwich stays whole\n"
            "VERDICT: RESTART\nRATIONALE: still pivotal",
            "Step 1: If the taped sandwich is mangled, Room B gains no whole sandwich.",
            "VALID",
            "NO_MORE_STEPS",
            "ASSUMPTION: The taped sandwich stays whole\n"
            "VERDICT: RESTART\nRATIONALE: no other angle presents itself",
            "SCORE chain-1: 4\nSCORE chain-2: 4\nSCORE chain-3: 4\nANSWER: F\n"
            "JUSTIFICATION: everything seems to stay in Room A",
        };
    case 5: // plain two-step run
        return {
            "Step 1: Duct tape binds only the top sandwich's surface to the stick.",
            "VALID",
            "Step 2: Carrying the stick takes that one sandwich, now taped and torn, "
            "while four whole ones remain in Room A.",
            "VALID",
            "NO_MORE_STEPS",
            kFinalize,
            "SCORE chain-1: 8\nANSWER: A\nJUSTIFICATION: only whole sandwiches count and "
            "four remain where they were made",
        };
    default:
        return {};
    }
}

} // namespace

Result<std::vector<std::string>> scenario_script(const std::string& question_id, int trial) {
    std::vector<std::string> script;
    if (question_id == "q5") {
        script = q5_script(trial);
    } else if (question_id == "q9") {
        script = q9_script(trial);
    } else {
        return make_error(ErrorKind::config,
                          "no scenario script for question '" + question_id + "'");
    }
    if (script.empty()) {
        return make_error(ErrorKind::config, "no scenario script for question '" +
                                                 question_id + "' trial " +
                                                 std::to_string(trial));
    }
    return script;
}

Result<std::shared_ptr<gateway::ScriptedBackend>> scenario_backend(
    const std::string& question_id, int trial) {
    auto script = scenario_script(question_id, trial);
    if (!script.ok()) {
        return script.error();
    }
    auto backend = std::make_shared<gateway::ScriptedBackend>();
    for (const auto& reply : script.value()) {
        backend->push_text(reply);
    }
    return backend;
}

std::vector<bool> scenario_expected(const std::string& question_id) {
    if (question_id == "q5") {
        return {true, true, true, false, true};
    }
    if (question_id == "q9") {
        return {true, false, true, false, true};
    }
    return {};
}

} // namespace cotforge::bench
