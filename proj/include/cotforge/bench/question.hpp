#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotforge/result.hpp"

namespace cotforge::bench {

/// One multiple-choice problem. Options keep file order; letters are unique
/// but option texts may repeat (some benchmark questions deliberately list
/// the same text twice under different letters), so matching is by letter
/// only.
struct Question {
    std::string id;
    std::string text;
    std::vector<std::pair<char, std::string>> options;
    char answer = '?';

    std::optional<std::string> option_text(char letter) const;
    bool has_option(char letter) const;
    Status validate() const;
};

/// Reads a line-delimited dataset: one object {id, question, options, answer}
/// per line. Failures are schema errors carrying the line number and field.
Result<std::vector<Question>> load_dataset(const std::filesystem::path& path);
Result<std::vector<Question>> parse_dataset(const std::string& content, const std::string& origin);

} // namespace cotforge::bench
