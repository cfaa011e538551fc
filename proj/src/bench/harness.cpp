#include "cotforge/bench/harness.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cotforge/bench/scenarios.hpp"
#include "cotforge/engine/transcript.hpp"
#include "cotforge/gateway/cassette.hpp"
#include "cotforge/metrics/tables.hpp"

namespace cotforge::bench {

const char* to_string(CassetteMode mode) {
    switch (mode) {
    case CassetteMode::live: return "live";
    case CassetteMode::record: return "record";
    case CassetteMode::replay: return "replay";
    }
    return "unknown";
}

Result<CassetteMode> cassette_mode_from_string(const std::string& name) {
    if (name == "live") return CassetteMode::live;
    if (name == "record") return CassetteMode::record;
    if (name == "replay") return CassetteMode::replay;
    return make_error(ErrorKind::config,
                      "unknown cassette mode '" + name + "' (live, record, replay)");
}

std::string RunPaths::safe(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char ch : name) {
        const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                          (ch >= '0' && ch <= '9') || ch == '.' || ch == '-';
        out.push_back(keep ? ch : '_');
    }
    if (out.empty()) {
        out = "_";
    }
    return out;
}

std::filesystem::path RunPaths::cassette(const std::string& label,
                                         const std::string& question_id, int trial) const {
    return cassette_root / safe(label) / safe(question_id) /
           ("trial" + std::to_string(trial) + ".jsonl");
}

std::filesystem::path RunPaths::transcript(const std::string& label,
                                           const std::string& question_id, int trial) const {
    return root / "transcripts" / safe(label) / safe(question_id) /
           ("trial" + std::to_string(trial) + ".log");
}

std::string RunPaths::transcript_rel(const std::string& label,
                                     const std::string& question_id, int trial) const {
    return "transcripts/" + safe(label) + "/" + safe(question_id) + "/trial" +
           std::to_string(trial) + ".log";
}

std::filesystem::path RunPaths::record(const std::string& label,
                                       const std::string& question_id, int trial) const {
    return root / "records" / safe(label) / safe(question_id) /
           ("trial" + std::to_string(trial) + ".json");
}

Status RunConfig::validate() const {
    if (run_dir.empty()) {
        return Status(make_error(ErrorKind::config, "run_dir is empty"));
    }
    if (k < 1) {
        return Status(make_error(ErrorKind::config, "k must be at least 1"));
    }
    if (parallel < 1) {
        return Status(make_error(ErrorKind::config, "parallel must be at least 1"));
    }
    if (auto status = budget.validate(); !status.ok()) {
        return status;
    }
    if (models.empty()) {
        return Status(make_error(ErrorKind::config, "no models configured"));
    }
    if (questions.empty()) {
        return Status(make_error(ErrorKind::config, "no questions configured"));
    }
    std::set<std::string> labels;
    std::set<std::string> safe_labels;
    for (const auto& model : models) {
        if (model.id.empty()) {
            return Status(make_error(ErrorKind::config, "a model spec has an empty id"));
        }
        if (!labels.insert(model.display_label()).second) {
            return Status(make_error(ErrorKind::config, "duplicate model label '" +
                                                            model.display_label() + "'"));
        }
        if (!safe_labels.insert(RunPaths::safe(model.display_label())).second) {
            return Status(make_error(ErrorKind::config,
                                     "model labels collide after file-safe mapping: '" +
                                         model.display_label() + "'"));
        }
    }
    std::set<std::string> ids;
    for (const auto& question : questions) {
        if (auto status = question.validate(); !status.ok()) {
            return status;
        }
        if (!ids.insert(question.id).second) {
            return Status(make_error(ErrorKind::config,
                                     "duplicate question id '" + question.id + "'"));
        }
    }
    return Status::success();
}

RunPaths paths_for(const RunConfig& config) {
    RunPaths paths;
    paths.root = config.run_dir;
    paths.cassette_root =
        config.cassette_dir.empty() ? config.run_dir / "cassettes" : config.cassette_dir;
    return paths;
}

BackendFactory replay_backend_factory() {
    return [](const ModelSpec&, const Question&, int,
              const std::filesystem::path& cassette_path)
               -> Result<std::shared_ptr<gateway::ModelBackend>> {
        auto backend = gateway::ReplayBackend::open(cassette_path);
        if (!backend.ok()) {
            return backend.error();
        }
        return std::static_pointer_cast<gateway::ModelBackend>(backend.take());
    };
}

BackendFactory recording_backend_factory(BackendFactory inner) {
    return [inner = std::move(inner)](const ModelSpec& model, const Question& question,
                                      int trial, const std::filesystem::path& cassette_path)
               -> Result<std::shared_ptr<gateway::ModelBackend>> {
        auto source = inner(model, question, trial, cassette_path);
        if (!source.ok()) {
            return source.error();
        }
        auto recorder = gateway::RecordingBackend::open(source.take(), cassette_path);
        if (!recorder.ok()) {
            return recorder.error();
        }
        return std::static_pointer_cast<gateway::ModelBackend>(recorder.take());
    };
}

BackendFactory scenario_backend_factory() {
    return [](const ModelSpec&, const Question& question, int trial,
              const std::filesystem::path&)
               -> Result<std::shared_ptr<gateway::ModelBackend>> {
        auto backend = scenario_backend(question.id, trial);
        if (!backend.ok()) {
            return backend.error();
        }
        return std::static_pointer_cast<gateway::ModelBackend>(backend.take());
    };
}

BackendFactory live_backend_factory() {
    return [](const ModelSpec& model, const Question&, int, const std::filesystem::path&)
               -> Result<std::shared_ptr<gateway::ModelBackend>> {
        return gateway::make_live_backend(model.dialect);
    };
}

namespace {

TrialRecord record_of(const ModelSpec& model, const Question& question, int trial,
                      const engine::PipelineResult& result,
                      const std::string& transcript_rel) {
    TrialRecord record;
    record.model_id = model.id;
    record.model_label = model.display_label();
    record.question_id = question.id;
    record.trial = trial;
    record.chosen = result.final_letter;
    record.unparsed = result.unparsed;
    record.correct = result.final_letter.has_value() &&
                     *result.final_letter == question.answer;
    record.restarts_used = result.restarts_used;
    record.calls_used = result.calls_used;
    record.usage = result.total_usage;
    record.transcript_path = transcript_rel;
    return record;
}

struct Cell {
    const ModelSpec* model;
    const Question* question;
    int trial;
};

} // namespace

Result<RunOutput> run_trials(const RunConfig& config, const prompts::PromptKit& kit,
                             const BackendFactory& factory) {
    if (auto status = config.validate(); !status.ok()) {
        return Error(status.error());
    }
    const RunPaths paths = paths_for(config);

    std::error_code ec;
    std::filesystem::create_directories(paths.root, ec);
    if (ec) {
        return make_error(ErrorKind::io, "cannot create run directory '" +
                                             paths.root.string() + "': " + ec.message());
    }

    std::vector<Cell> cells;
    for (const auto& model : config.models) {
        for (const auto& question : config.questions) {
            for (int trial = 1; trial <= config.k; ++trial) {
                cells.push_back(Cell{&model, &question, trial});
            }
        }
    }

    std::vector<TrialRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> executed{0};
    std::atomic<int> resumed{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<Error> first_error;

    auto report_error = [&](Error error) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error.has_value()) {
            first_error = std::move(error);
        }
        failed.store(true);
    };

    auto worker = [&]() {
        while (!failed.load()) {
            const std::size_t index = next.fetch_add(1);
            if (index >= cells.size()) {
                return;
            }
            const Cell& cell = cells[index];
            const std::string& label = cell.model->display_label();
            const auto record_path = paths.record(label, cell.question->id, cell.trial);

            if (std::filesystem::exists(record_path)) {
                auto existing = load_trial_record(record_path);
                if (!existing.ok()) {
                    report_error(existing.error());
                    return;
                }
                records[index] = existing.take();
                resumed.fetch_add(1);
                continue;
            }

            auto backend = factory(*cell.model, *cell.question, cell.trial,
                                   paths.cassette(label, cell.question->id, cell.trial));
            if (!backend.ok()) {
                report_error(backend.error());
                return;
            }
            // A transcript left over from an interrupted attempt would be
            // appended to; start the trial's log fresh instead.
            const auto transcript_path =
                paths.transcript(label, cell.question->id, cell.trial);
            std::error_code remove_ec;
            std::filesystem::remove(transcript_path, remove_ec);
            auto transcript = engine::FileTranscript::open(transcript_path.string());
            if (!transcript.ok()) {
                report_error(transcript.error());
                return;
            }

            engine::PipelineResult result =
                engine::solve(*cell.question, cell.model->id, config.budget,
                              backend.take(), kit, transcript.value().get());

            TrialRecord record =
                record_of(*cell.model, *cell.question, cell.trial, result,
                          paths.transcript_rel(label, cell.question->id, cell.trial));
            if (auto status = save_trial_record(record, record_path); !status.ok()) {
                report_error(status.error());
                return;
            }
            records[index] = std::move(record);
            executed.fetch_add(1);
        }
    };

    const int worker_count =
        static_cast<int>(std::min<std::size_t>(config.parallel, cells.size()));
    if (worker_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (int i = 0; i < worker_count; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    if (first_error.has_value()) {
        return *first_error;
    }

    if (auto status = save_records_jsonl(records, paths.records_jsonl()); !status.ok()) {
        return Error(status.error());
    }
    if (!std::filesystem::exists(paths.manifest())) {
        if (auto status = save_manifest(manifest_of(config), paths.manifest());
            !status.ok()) {
            return Error(status.error());
        }
    }

    RunOutput output;
    output.records = std::move(records);
    output.executed = executed.load();
    output.resumed = resumed.load();
    std::vector<std::string> labels;
    for (const auto& model : config.models) {
        labels.push_back(model.display_label());
    }
    std::vector<std::string> question_ids;
    for (const auto& question : config.questions) {
        question_ids.push_back(question.id);
    }
    auto outcomes = outcomes_from_records(output.records, labels, question_ids, config.k);
    if (!outcomes.ok()) {
        return outcomes.error();
    }
    output.outcomes = outcomes.take();
    return output;
}

Result<OutcomeTable> write_scores(const RunConfig& config,
                                  const std::vector<TrialRecord>& records) {
    const RunPaths paths = paths_for(config);
    std::vector<std::string> labels;
    for (const auto& model : config.models) {
        labels.push_back(model.display_label());
    }
    std::vector<std::string> question_ids;
    for (const auto& question : config.questions) {
        question_ids.push_back(question.id);
    }
    auto outcomes = outcomes_from_records(records, labels, question_ids, config.k);
    if (!outcomes.ok()) {
        return outcomes.error();
    }
    const OutcomeTable table = outcomes.take();

    auto write_file = [](const std::filesystem::path& path,
                         const std::string& content) -> Status {
        std::ofstream out(path, std::ios::trunc | std::ios::binary);
        if (!out.is_open()) {
            return Status(
                make_error(ErrorKind::io, "cannot open '" + path.string() + "' for writing"));
        }
        out << content;
        out.flush();
        if (!out.good()) {
            return Status(make_error(ErrorKind::io, "write failed for '" + path.string() + "'"));
        }
        return Status::success();
    };

    auto scores = metrics::scores_to_json_text(table);
    if (!scores.ok()) {
        return scores.error();
    }
    if (auto status = write_file(paths.scores_json(), scores.value()); !status.ok()) {
        return Error(status.error());
    }
    for (const auto& label : table.models) {
        auto rendered = metrics::render_results_file(table, label);
        if (!rendered.ok()) {
            return rendered.error();
        }
        if (auto status = write_file(paths.results_txt(label), rendered.value());
            !status.ok()) {
            return Error(status.error());
        }
    }
    auto summary = metrics::render_summary_file(table);
    if (!summary.ok()) {
        return summary.error();
    }
    if (auto status = write_file(paths.summary_txt(), summary.value()); !status.ok()) {
        return Error(status.error());
    }
    return table;
}

RunManifest manifest_of(const RunConfig& config) {
    RunManifest manifest;
    manifest.k = config.k;
    manifest.mode = config.mode;
    manifest.budget = config.budget;
    manifest.models = config.models;
    for (const auto& question : config.questions) {
        manifest.question_ids.push_back(question.id);
    }
    return manifest;
}

std::string manifest_to_json_text(const RunManifest& manifest) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& model : manifest.models) {
        models.push_back({{"id", model.id},
                          {"dialect", gateway::to_string(model.dialect)},
                          {"label", model.display_label()}});
    }
    nlohmann::json doc{
        {"k", manifest.k},
        {"mode", to_string(manifest.mode)},
        {"budget",
         {{"max_restarts", manifest.budget.max_restarts},
          {"max_total_calls", manifest.budget.max_total_calls},
          {"max_steps", manifest.budget.step_budget.max_steps},
          {"max_revisions", manifest.budget.step_budget.max_revisions}}},
        {"models", models},
        {"questions", manifest.question_ids},
    };
    return doc.dump(2) + "\n";
}

Result<RunManifest> manifest_from_json_text(const std::string& text,
                                            const std::string& origin) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        return make_error(ErrorKind::schema, origin + ": manifest is not a JSON object");
    }
    RunManifest manifest;
    try {
        manifest.k = doc.at("k").get<int>();
        auto mode = cassette_mode_from_string(doc.at("mode").get<std::string>());
        if (!mode.ok()) {
            return mode.error();
        }
        manifest.mode = mode.value();
        const auto& budget = doc.at("budget");
        manifest.budget.max_restarts = budget.at("max_restarts").get<int>();
        manifest.budget.max_total_calls = budget.at("max_total_calls").get<int>();
        manifest.budget.step_budget.max_steps = budget.at("max_steps").get<int>();
        manifest.budget.step_budget.max_revisions = budget.at("max_revisions").get<int>();
        for (const auto& entry : doc.at("models")) {
            ModelSpec model;
            model.id = entry.at("id").get<std::string>();
            auto dialect = gateway::dialect_from_string(entry.at("dialect").get<std::string>());
            if (!dialect.ok()) {
                return dialect.error();
            }
            model.dialect = dialect.value();
            model.label = entry.at("label").get<std::string>();
            manifest.models.push_back(std::move(model));
        }
        for (const auto& entry : doc.at("questions")) {
            manifest.question_ids.push_back(entry.get<std::string>());
        }
    } catch (const nlohmann::json::exception& ex) {
        return make_error(ErrorKind::schema,
                          origin + ": manifest field error: " + ex.what());
    }
    return manifest;
}

Status save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    std::error_code ec;
    if (!path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            return Status(make_error(ErrorKind::io, "cannot create directory for '" +
                                                        path.string() + "': " + ec.message()));
        }
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out.is_open()) {
        return Status(
            make_error(ErrorKind::io, "cannot open '" + path.string() + "' for writing"));
    }
    out << manifest_to_json_text(manifest);
    out.flush();
    if (!out.good()) {
        return Status(make_error(ErrorKind::io, "write failed for '" + path.string() + "'"));
    }
    return Status::success();
}

Result<RunManifest> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        return make_error(ErrorKind::io, "cannot open manifest '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return manifest_from_json_text(buffer.str(), path.string());
}

} // namespace cotforge::bench
