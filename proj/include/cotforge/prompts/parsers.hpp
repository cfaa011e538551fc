#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cotforge/bench/question.hpp"
#include "cotforge/result.hpp"

namespace cotforge::prompts {

/// One accepted reasoning step, stripped of its "Step X:" prefix.
struct ParsedStep {
    int index = 1;
    std::string body;
};

/// Outcome of the feedback gate. critique is non-empty exactly when the
/// step failed review.
struct Verdict {
    bool passed = false;
    std::string critique;
};

enum class ConsistencyVerdict { restart, finalize };

const char* to_string(ConsistencyVerdict verdict);

struct ConsistencyFinding {
    std::vector<std::string> assumptions;
    ConsistencyVerdict verdict = ConsistencyVerdict::finalize;
    std::string rationale;
};

struct FinalSelection {
    char letter = '?';
    std::map<std::string, int> chain_scores;       // chain id -> 0..10
    std::map<std::string, std::string> refuted_by; // refuted chain -> refuting chain
    std::string justification;
};

/// True when the literal token NO_MORE_STEPS occurs anywhere in raw.
bool detect_termination(const std::string& raw);

/// Removes every NO_MORE_STEPS occurrence and trims the result.
std::string strip_termination(const std::string& raw);

/// Extracts the step from the first line shaped like "Step N: body"
/// ("step" is case-insensitive, ':' or '-' both separate). The body runs to
/// the end of the reply. N must equal expected_index.
Result<ParsedStep> parse_step(const std::string& raw, int expected_index);

/// Reads the first line whose leading token is VALID, or the first line
/// starting with "ISSUES:". The critique runs to the end of the reply.
Result<Verdict> parse_verdict(const std::string& raw);

/// Grammar: any number of "ASSUMPTION: <text>" lines, one
/// "VERDICT: RESTART" or "VERDICT: FINALIZE" line, one "RATIONALE: <text>"
/// line. Keywords are case-insensitive. RESTART with no assumptions is an
/// invariant error.
Result<ConsistencyFinding> parse_consistency(const std::string& raw);

/// Grammar: "SCORE <chain-id>: <0-10>" lines, "REFUTED <a> BY <b>" lines,
/// one "ANSWER: <letter>" line (the last well-formed one wins), and an
/// optional "JUSTIFICATION: <text>" line. The letter must be one of the
/// question's option letters.
Result<FinalSelection> parse_final(const std::string& raw, const bench::Question& question);

} // namespace cotforge::prompts
