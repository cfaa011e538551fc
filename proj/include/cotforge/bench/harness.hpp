#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cotforge/bench/outcomes.hpp"
#include "cotforge/bench/question.hpp"
#include "cotforge/bench/records.hpp"
#include "cotforge/engine/orchestrator.hpp"
#include "cotforge/gateway/backend.hpp"
#include "cotforge/gateway/http_backend.hpp"
#include "cotforge/prompts/prompt_kit.hpp"
#include "cotforge/result.hpp"

namespace cotforge::bench {

struct ModelSpec {
    std::string id;
    gateway::Dialect dialect = gateway::Dialect::completions;
    /// Presentation name in tables; defaults to the id when empty.
    std::string label;

    const std::string& display_label() const { return label.empty() ? id : label; }
};

enum class CassetteMode { live, record, replay };

const char* to_string(CassetteMode mode);
Result<CassetteMode> cassette_mode_from_string(const std::string& name);

/// Run-directory layout.  Every path component derived from a label or id is
/// made file-safe first.
struct RunPaths {
    std::filesystem::path root;
    std::filesystem::path cassette_root;

    static std::string safe(const std::string& name);

    std::filesystem::path manifest() const { return root / "manifest.json"; }
    std::filesystem::path records_jsonl() const { return root / "records.jsonl"; }
    std::filesystem::path scores_json() const { return root / "scores.json"; }
    std::filesystem::path summary_txt() const { return root / "summary.txt"; }
    std::filesystem::path results_txt(const std::string& label) const {
        return root / ("results." + safe(label) + ".txt");
    }
    std::filesystem::path cassette(const std::string& label, const std::string& question_id,
                                   int trial) const;
    std::filesystem::path transcript(const std::string& label, const std::string& question_id,
                                     int trial) const;
    std::string transcript_rel(const std::string& label, const std::string& question_id,
                               int trial) const;
    std::filesystem::path record(const std::string& label, const std::string& question_id,
                                 int trial) const;
};

struct RunConfig {
    std::filesystem::path run_dir;
    /// Where cassettes are read from (replay) or written to (record).
    /// Defaults to <run_dir>/cassettes when empty.
    std::filesystem::path cassette_dir;
    int k = 5;
    int parallel = 1;
    CassetteMode mode = CassetteMode::replay;
    engine::RunBudget budget;
    std::vector<ModelSpec> models;
    std::vector<Question> questions;

    Status validate() const;
};

RunPaths paths_for(const RunConfig& config);

/// Produces the backend for one (model, question, trial) cell.
using BackendFactory = std::function<Result<std::shared_ptr<gateway::ModelBackend>>(
    const ModelSpec& model, const Question& question, int trial,
    const std::filesystem::path& cassette_path)>;

/// Replays the cassette at the given path; the default for scoring runs.
BackendFactory replay_backend_factory();
/// Runs `inner` and appends every exchange to the cassette path.
BackendFactory recording_backend_factory(BackendFactory inner);
/// Serves the bundled scripted scenarios (questions "q5" and "q9").
BackendFactory scenario_backend_factory();
/// Talks to a real endpoint per the model's dialect; keys and base URLs come
/// from the environment.
BackendFactory live_backend_factory();

/// What one harness invocation did.
struct RunOutput {
    std::vector<TrialRecord> records; // model-major, question, trial order
    OutcomeTable outcomes;
    int executed = 0; // trials run in this invocation
    int resumed = 0;  // trials loaded from existing record files
};

/// Runs every (model, question, trial) cell with up to `parallel` workers,
/// skipping cells whose record file already exists, then writes
/// records.jsonl.  Trial-level model failures (including unparseable finals)
/// become records, not harness errors.
Result<RunOutput> run_trials(const RunConfig& config, const prompts::PromptKit& kit,
                             const BackendFactory& factory);

/// Scores records into the outcome grid and writes scores.json, one
/// results.<model>.txt per model, and summary.txt under the run directory.
Result<OutcomeTable> write_scores(const RunConfig& config,
                                  const std::vector<TrialRecord>& records);

/// Everything needed to re-score or resume a run later.
struct RunManifest {
    int k = 5;
    CassetteMode mode = CassetteMode::replay;
    engine::RunBudget budget;
    std::vector<ModelSpec> models;
    std::vector<std::string> question_ids;
};

RunManifest manifest_of(const RunConfig& config);
std::string manifest_to_json_text(const RunManifest& manifest);
Result<RunManifest> manifest_from_json_text(const std::string& text,
                                            const std::string& origin);
Status save_manifest(const RunManifest& manifest, const std::filesystem::path& path);
Result<RunManifest> load_manifest(const std::filesystem::path& path);

} // namespace cotforge::bench
