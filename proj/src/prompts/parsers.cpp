#include "cotforge/prompts/parsers.hpp"

#include <algorithm>
#include <cctype>

namespace cotforge::prompts {

namespace {

constexpr const char* kSentinel = "NO_MORE_STEPS";

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_lines(const std::string& raw) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= raw.size()) {
        std::size_t eol = raw.find('\n', start);
        if (eol == std::string::npos) {
            lines.push_back(raw.substr(start));
            break;
        }
        lines.push_back(raw.substr(start, eol - start));
        start = eol + 1;
    }
    return lines;
}

bool iequals(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

bool iprefix(const std::string& s, const std::string& prefix) {
    if (s.size() < prefix.size()) return false;
    return iequals(s.substr(0, prefix.size()), prefix);
}

std::string strip_trailing_punct(std::string token) {
    while (!token.empty()) {
        char c = token.back();
        if (c == '.' || c == ',' || c == '!' || c == ';' || c == ':')
            token.pop_back();
        else
            break;
    }
    return token;
}

std::string first_token(const std::string& line) {
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = line.find_first_of(" \t\r", begin);
    if (end == std::string::npos) end = line.size();
    return line.substr(begin, end - begin);
}

/// Joins line i's tail with all following lines, trimmed.
std::string tail_from(const std::vector<std::string>& lines, std::size_t i,
                      const std::string& line_tail) {
    std::string out = line_tail;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
        out += '\n';
        out += lines[j];
    }
    return trim(out);
}

} // namespace

const char* to_string(ConsistencyVerdict verdict) {
    return verdict == ConsistencyVerdict::restart ? "RESTART" : "FINALIZE";
}

bool detect_termination(const std::string& raw) {
    return raw.find(kSentinel) != std::string::npos;
}

std::string strip_termination(const std::string& raw) {
    std::string out = raw;
    const std::string sentinel = kSentinel;
    std::size_t pos = 0;
    while ((pos = out.find(sentinel, pos)) != std::string::npos)
        out.erase(pos, sentinel.size());
    return trim(out);
}

Result<ParsedStep> parse_step(const std::string& raw, int expected_index) {
    if (expected_index < 1)
        return make_error(ErrorKind::invariant, "expected_index must be >= 1");
    const auto lines = split_lines(raw);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || !iprefix(line.substr(pos), "step")) continue;
        pos += 4;
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t digits_begin = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos])) &&
               pos - digits_begin < 9)
            ++pos;
        if (pos == digits_begin) continue;
        const long index = std::stol(line.substr(digits_begin, pos - digits_begin));
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos >= line.size() || (line[pos] != ':' && line[pos] != '-')) continue;
        ++pos;

        if (index != expected_index)
            return make_error(ErrorKind::index_mismatch,
                              "step index " + std::to_string(index) + " where " +
                                  std::to_string(expected_index) + " was expected");
        const std::string body = tail_from(lines, i, line.substr(pos));
        if (body.empty())
            return make_error(ErrorKind::format, "step body is empty");
        return ParsedStep{.index = static_cast<int>(index), .body = body};
    }
    return make_error(ErrorKind::format, "no step prefix found");
}

Result<Verdict> parse_verdict(const std::string& raw) {
    const auto lines = split_lines(raw);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string token = strip_trailing_punct(first_token(lines[i]));
        if (iequals(token, "VALID"))
            return Verdict{.passed = true, .critique = ""};
        const std::string trimmed = trim(lines[i]);
        if (iprefix(trimmed, "issues")) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            const std::string critique = tail_from(lines, i, trimmed.substr(colon + 1));
            if (critique.empty())
                return make_error(ErrorKind::format, "ISSUES verdict without a critique");
            return Verdict{.passed = false, .critique = critique};
        }
    }
    return make_error(ErrorKind::format, "no VALID or ISSUES verdict line");
}

Result<ConsistencyFinding> parse_consistency(const std::string& raw) {
    ConsistencyFinding finding;
    bool have_verdict = false;
    bool have_rationale = false;
    for (const std::string& line : split_lines(raw)) {
        const std::string trimmed = trim(line);
        if (iprefix(trimmed, "assumption")) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            const std::string text = trim(trimmed.substr(colon + 1));
            if (!text.empty()) finding.assumptions.push_back(text);
        } else if (iprefix(trimmed, "verdict") && !have_verdict) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            const std::string value = strip_trailing_punct(trim(trimmed.substr(colon + 1)));
            if (iequals(value, "RESTART"))
                finding.verdict = ConsistencyVerdict::restart;
            else if (iequals(value, "FINALIZE"))
                finding.verdict = ConsistencyVerdict::finalize;
            else
                return make_error(ErrorKind::format, "unknown verdict value '" + value + "'");
            have_verdict = true;
        } else if (iprefix(trimmed, "rationale") && !have_rationale) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            finding.rationale = trim(trimmed.substr(colon + 1));
            have_rationale = true;
        }
    }
    if (!have_verdict)
        return make_error(ErrorKind::format, "no VERDICT line");
    if (finding.verdict == ConsistencyVerdict::restart && finding.assumptions.empty())
        return make_error(ErrorKind::invariant, "RESTART verdict with no assumptions");
    return finding;
}

namespace {

std::optional<int> parse_score_value(const std::string& text) {
    const std::string value = strip_trailing_punct(trim(text));
    if (value.empty() || value.size() > 2) return std::nullopt;
    for (char c : value)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    const int score = std::stoi(value);
    if (score < 0 || score > 10) return std::nullopt;
    return score;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t begin = line.find_first_not_of(" \t\r", pos);
        if (begin == std::string::npos) break;
        std::size_t end = line.find_first_of(" \t\r", begin);
        if (end == std::string::npos) end = line.size();
        tokens.push_back(line.substr(begin, end - begin));
        pos = end;
    }
    return tokens;
}

} // namespace

Result<FinalSelection> parse_final(const std::string& raw, const bench::Question& question) {
    FinalSelection selection;
    bool have_letter = false;
    for (const std::string& line : split_lines(raw)) {
        const std::string trimmed = trim(line);
        if (iprefix(trimmed, "score")) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            const std::string id = trim(trimmed.substr(5, colon - 5));
            auto score = parse_score_value(trimmed.substr(colon + 1));
            if (!id.empty() && score)
                selection.chain_scores[id] = *score;
        } else if (iprefix(trimmed, "refuted")) {
            const auto tokens = tokens_of(trimmed);
            if (tokens.size() == 4 && iequals(tokens[2], "by"))
                selection.refuted_by[strip_trailing_punct(tokens[1])] =
                    strip_trailing_punct(tokens[3]);
        } else if (iprefix(trimmed, "answer")) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            const std::string value = strip_trailing_punct(trim(trimmed.substr(colon + 1)));
            if (value.size() != 1) continue;
            selection.letter =
                static_cast<char>(std::toupper(static_cast<unsigned char>(value[0])));
            have_letter = true;
        } else if (iprefix(trimmed, "justification")) {
            std::size_t colon = trimmed.find(':');
            if (colon == std::string::npos) continue;
            selection.justification = trim(trimmed.substr(colon + 1));
        }
    }
    if (!have_letter)
        return make_error(ErrorKind::format, "no ANSWER line");
    if (!question.has_option(selection.letter))
        return make_error(ErrorKind::unknown_letter,
                          std::string("answer letter '") + selection.letter +
                              "' is not one of the options");
    return selection;
}

} // namespace cotforge::prompts
