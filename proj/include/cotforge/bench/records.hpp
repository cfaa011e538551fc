#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cotforge/bench/outcomes.hpp"
#include "cotforge/bench/question.hpp"
#include "cotforge/gateway/types.hpp"
#include "cotforge/result.hpp"

namespace cotforge::bench {

/// Outcome of one (model, question, trial) run.  correct implies chosen
/// matches the reference answer; unparsed implies no chosen letter and
/// counts as incorrect.
struct TrialRecord {
    std::string model_id;
    std::string model_label;
    std::string question_id;
    int trial = 1; // 1-based
    std::optional<char> chosen;
    bool correct = false;
    bool unparsed = false;
    int restarts_used = 0;
    int calls_used = 0;
    gateway::TokenUsage usage;
    /// Run-directory-relative path of the trial transcript.
    std::string transcript_path;

    Status validate() const;
};

std::string trial_record_to_json_text(const TrialRecord& record);
Result<TrialRecord> trial_record_from_json_text(const std::string& text,
                                                const std::string& origin);

/// Atomic write: the record lands under a temporary name first, then is
/// renamed into place so resumption never sees a half-written file.
Status save_trial_record(const TrialRecord& record, const std::filesystem::path& path);
Result<TrialRecord> load_trial_record(const std::filesystem::path& path);

/// All records of a run as one JSONL file, one record per line, in the
/// caller-supplied order.
Status save_records_jsonl(const std::vector<TrialRecord>& records,
                          const std::filesystem::path& path);
Result<std::vector<TrialRecord>> load_records_jsonl(const std::filesystem::path& path);

/// Folds records into the correctness grid for scoring.  Every
/// (label, question, trial) cell in the cross product must be present
/// exactly once; holes are missing_cell errors naming the spot.
Result<OutcomeTable> outcomes_from_records(const std::vector<TrialRecord>& records,
                                           const std::vector<std::string>& model_labels,
                                           const std::vector<std::string>& question_ids,
                                           int k);

} // namespace cotforge::bench
