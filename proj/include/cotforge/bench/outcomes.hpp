#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cotforge/result.hpp"

namespace cotforge::bench {

/// Correctness grid: model label -> question id -> k booleans ordered by
/// trial index. The label and id vectors fix presentation order.
struct OutcomeTable {
    int k = 5;
    std::vector<std::string> models;
    std::vector<std::string> questions;
    std::map<std::string, std::map<std::string, std::vector<bool>>> cells;

    Result<std::vector<bool>> row(const std::string& model, const std::string& question) const;

    /// Checks every (model, question) cell exists with exactly k entries.
    Status validate() const;
};

Result<OutcomeTable> outcome_table_from_json_text(const std::string& text, const std::string& origin);
std::string outcome_table_to_json_text(const OutcomeTable& table);
Result<OutcomeTable> load_outcome_table(const std::filesystem::path& path);
Status save_outcome_table(const OutcomeTable& table, const std::filesystem::path& path);

} // namespace cotforge::bench
