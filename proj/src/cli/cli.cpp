#include "cotforge/cli/cli.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cotforge/bench/fixtures.hpp"
#include "cotforge/bench/question.hpp"
#include "cotforge/metrics/tables.hpp"
#include "cotforge/prompts/prompt_kit.hpp"
#include "cotforge/report/figures.hpp"

namespace cotforge::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys{
        "dataset",       "run_dir",          "models",          "cassette",
        "cassette_dir",  "templates",        "grids",           "k",
        "parallel",      "cot.max_steps",    "cot.max_revisions",
        "cot.max_restarts", "cot.max_total_calls",
    };
    return keys;
}

Result<int> parse_positive(const std::string& value, const std::string& origin) {
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(value, &used);
        if (used != value.size() || parsed < 0)
            return make_error(ErrorKind::config, origin + ": '" + value + "' is not a count");
        return parsed;
    } catch (const std::exception&) {
        return make_error(ErrorKind::config, origin + ": '" + value + "' is not a count");
    }
}

Status write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return make_error(ErrorKind::io, "cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) return make_error(ErrorKind::io, "write failed for " + path.string());
    return Status::success();
}

int fail(std::ostream& err, const Error& error) {
    err << "error: " << error.describe() << '\n';
    return 1;
}

int usage_error(std::ostream& err, const std::string& message) {
    err << "error: " << message << '\n';
    return 1;
}

Result<prompts::PromptKit> load_kit(const Options& options) {
    auto library = prompts::PromptLibrary::load_dir(options.templates);
    if (!library.ok()) return library.error();
    return prompts::PromptKit(library.take());
}

/// Loads the outcome grid either from an explicit grids file or from a run
/// directory's manifest plus records.
Result<bench::OutcomeTable> load_table(const Options& options) {
    if (!options.grids.empty()) return bench::load_outcome_table(options.grids);
    if (options.run_dir.empty())
        return make_error(ErrorKind::config, "either --run-dir or --grids is required");

    auto manifest = bench::load_manifest(options.run_dir / "manifest.json");
    if (!manifest.ok()) return manifest.error();
    auto records = bench::load_records_jsonl(options.run_dir / "records.jsonl");
    if (!records.ok()) return records.error();

    std::vector<std::string> labels;
    labels.reserve(manifest.value().models.size());
    for (const auto& model : manifest.value().models) labels.push_back(model.display_label());
    return bench::outcomes_from_records(records.value(), labels,
                                        manifest.value().question_ids, manifest.value().k);
}

/// Where score/report artifacts land: the run directory when given,
/// otherwise next to the grids file.
std::filesystem::path output_dir(const Options& options) {
    if (!options.run_dir.empty()) return options.run_dir;
    return options.grids.parent_path();
}

Status score_table_to_dir(const bench::OutcomeTable& table, const std::filesystem::path& dir) {
    bench::RunPaths paths{dir, dir / "cassettes"};
    for (const auto& model : table.models) {
        auto rendered = metrics::render_results_file(table, model);
        if (!rendered.ok()) return rendered.error();
        if (auto s = write_file(paths.results_txt(model), rendered.value()); !s.ok()) return s;
    }
    auto summary = metrics::render_summary_file(table);
    if (!summary.ok()) return summary.error();
    if (auto s = write_file(paths.summary_txt(), summary.value()); !s.ok()) return s;
    auto scores = metrics::scores_to_json_text(table);
    if (!scores.ok()) return scores.error();
    return write_file(paths.scores_json(), scores.value());
}

std::string question_to_json_line(const bench::Question& question) {
    json options = json::object();
    for (const auto& [letter, text] : question.options) options[std::string(1, letter)] = text;
    json j{
        {"id", question.id},
        {"question", question.text},
        {"options", std::move(options)},
        {"answer", std::string(1, question.answer)},
    };
    return j.dump() + "\n";
}

bool any_record_file(const std::filesystem::path& run_dir) {
    std::error_code ec;
    const auto records_dir = run_dir / "records";
    if (!std::filesystem::exists(records_dir, ec)) return false;
    for (auto it = std::filesystem::recursive_directory_iterator(records_dir, ec);
         !ec && it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (it->is_regular_file(ec)) return true;
    }
    return false;
}

bench::BackendFactory factory_for(bench::CassetteMode mode) {
    switch (mode) {
    case bench::CassetteMode::replay: return bench::replay_backend_factory();
    case bench::CassetteMode::record:
        return bench::recording_backend_factory(bench::live_backend_factory());
    case bench::CassetteMode::live: return bench::live_backend_factory();
    }
    return bench::replay_backend_factory();
}

} // namespace

Result<std::vector<bench::ModelSpec>> parse_models(const std::string& spec) {
    std::vector<bench::ModelSpec> models;
    std::istringstream in(spec);
    std::string entry;
    while (std::getline(in, entry, ',')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        bench::ModelSpec model;
        const auto first = entry.find(':');
        if (first == std::string::npos) {
            model.id = entry;
        } else {
            model.id = trim(entry.substr(0, first));
            const auto second = entry.find(':', first + 1);
            const std::string dialect_name =
                trim(second == std::string::npos ? entry.substr(first + 1)
                                                 : entry.substr(first + 1, second - first - 1));
            auto dialect = gateway::dialect_from_string(dialect_name);
            if (!dialect.ok())
                return make_error(ErrorKind::config, "model entry '" + entry + "': " +
                                                         dialect.error().message);
            model.dialect = dialect.value();
            if (second != std::string::npos) model.label = trim(entry.substr(second + 1));
        }
        if (model.id.empty())
            return make_error(ErrorKind::config, "model entry '" + entry + "' has no id");
        models.push_back(std::move(model));
    }
    if (models.empty())
        return make_error(ErrorKind::config, "model list '" + spec + "' is empty");
    return models;
}

Result<std::map<std::string, std::string>> load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return make_error(ErrorKind::io, "cannot open config " + path.string());

    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            return make_error(ErrorKind::config, path.string() + " line " +
                                                     std::to_string(line_no) +
                                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_config_keys().count(key))
            return make_error(ErrorKind::config, path.string() + " line " +
                                                     std::to_string(line_no) +
                                                     ": unknown key '" + key + "'");
        values[key] = value;
    }
    return values;
}

Result<Options> resolve_options(const RawOptions& raw) {
    std::map<std::string, std::string> file_values;
    if (!raw.config.empty()) {
        auto loaded = load_config_file(raw.config);
        if (!loaded.ok()) return loaded.error();
        file_values = loaded.take();
    }

    auto pick = [&](const std::string& flag, const char* key) -> std::string {
        if (!flag.empty()) return flag;
        auto it = file_values.find(key);
        return it == file_values.end() ? std::string{} : it->second;
    };
    auto pick_count = [&](int flag, const char* key, int fallback) -> Result<int> {
        if (flag >= 0) return flag;
        auto it = file_values.find(key);
        if (it == file_values.end()) return fallback;
        return parse_positive(it->second, std::string("config key ") + key);
    };

    Options options;
    options.dataset = pick(raw.dataset, "dataset");
    options.run_dir = pick(raw.run_dir, "run_dir");
    options.cassette_dir = pick(raw.cassette_dir, "cassette_dir");
    options.grids = pick(raw.grids, "grids");
    if (const std::string templates = pick(raw.templates, "templates"); !templates.empty())
        options.templates = templates;

    if (const std::string mode = pick(raw.cassette, "cassette"); !mode.empty()) {
        auto parsed = bench::cassette_mode_from_string(mode);
        if (!parsed.ok()) return parsed.error();
        options.mode = parsed.value();
    }

    if (const std::string models = pick(raw.models, "models"); !models.empty()) {
        auto parsed = parse_models(models);
        if (!parsed.ok()) return parsed.error();
        options.models = parsed.take();
    }

    auto k = pick_count(raw.k, "k", options.k);
    if (!k.ok()) return k.error();
    options.k = k.value();
    auto parallel = pick_count(raw.parallel, "parallel", options.parallel);
    if (!parallel.ok()) return parallel.error();
    options.parallel = parallel.value();

    auto steps = pick_count(raw.max_steps, "cot.max_steps", options.budget.step_budget.max_steps);
    if (!steps.ok()) return steps.error();
    options.budget.step_budget.max_steps = steps.value();
    auto revisions = pick_count(raw.max_revisions, "cot.max_revisions",
                                options.budget.step_budget.max_revisions);
    if (!revisions.ok()) return revisions.error();
    options.budget.step_budget.max_revisions = revisions.value();
    auto restarts = pick_count(raw.max_restarts, "cot.max_restarts", options.budget.max_restarts);
    if (!restarts.ok()) return restarts.error();
    options.budget.max_restarts = restarts.value();
    auto calls = pick_count(raw.max_total_calls, "cot.max_total_calls",
                            options.budget.max_total_calls);
    if (!calls.ok()) return calls.error();
    options.budget.max_total_calls = calls.value();

    return options;
}

int cmd_run(const Options& options, std::ostream& out, std::ostream& err) {
    if (options.run_dir.empty()) return usage_error(err, "run requires --run-dir");
    if (options.dataset.empty()) return usage_error(err, "run requires --dataset");
    if (options.models.empty()) return usage_error(err, "run requires --models");

    auto kit = load_kit(options);
    if (!kit.ok()) return fail(err, kit.error());
    auto questions = bench::load_dataset(options.dataset);
    if (!questions.ok()) return fail(err, questions.error());

    bench::RunConfig config;
    config.run_dir = options.run_dir;
    config.cassette_dir = options.cassette_dir;
    config.k = options.k;
    config.parallel = options.parallel;
    config.mode = options.mode;
    config.budget = options.budget;
    config.models = options.models;
    config.questions = questions.take();
    if (auto s = config.validate(); !s.ok()) return fail(err, s.error());

    auto output = bench::run_trials(config, kit.value(), factory_for(options.mode));
    if (!output.ok()) {
        err << "error: " << output.error().describe() << '\n';
        if (any_record_file(config.run_dir)) {
            err << "partial run left in " << config.run_dir.string()
                << "; rerun the same command to resume\n";
            return 2;
        }
        return 1;
    }

    auto table = bench::write_scores(config, output.value().records);
    if (!table.ok()) return fail(err, table.error());

    out << "run complete: " << output.value().executed << " executed, "
        << output.value().resumed << " resumed\n";
    auto summary = metrics::render_summary_file(table.value());
    if (summary.ok()) out << summary.value();
    out << "artifacts in " << config.run_dir.string() << '\n';
    return 0;
}

int cmd_score(const Options& options, std::ostream& out, std::ostream& err) {
    auto table = load_table(options);
    if (!table.ok()) return fail(err, table.error());

    if (auto s = score_table_to_dir(table.value(), output_dir(options)); !s.ok())
        return fail(err, s.error());

    auto summary = metrics::render_summary_file(table.value());
    if (!summary.ok()) return fail(err, summary.error());
    out << summary.value();
    return 0;
}

int cmd_report(const Options& options, std::ostream& out, std::ostream& err) {
    auto table = load_table(options);
    if (!table.ok()) return fail(err, table.error());

    const auto dir = output_dir(options);
    if (auto s = report::write_figures(table.value(), dir); !s.ok()) return fail(err, s.error());
    out << "figures written: " << (dir / "fig_avg.dat").string() << ", "
        << (dir / "fig_eag.dat").string() << ", " << (dir / "fig_avg.svg").string() << ", "
        << (dir / "fig_eag.svg").string() << '\n';
    return 0;
}

int cmd_replay(const Options& options, std::ostream& out, std::ostream& err) {
    Options replay = options;
    replay.mode = bench::CassetteMode::replay;
    if (replay.run_dir.empty()) return usage_error(err, "replay requires --run-dir");
    const auto cassettes =
        replay.cassette_dir.empty() ? replay.run_dir / "cassettes" : replay.cassette_dir;
    std::error_code ec;
    if (!std::filesystem::is_directory(cassettes, ec))
        return usage_error(err, "replay requires an existing cassette directory at " +
                                    cassettes.string());
    return cmd_run(replay, out, err);
}

int cmd_fixtures(const Options& options, std::ostream& out, std::ostream& err) {
    if (options.run_dir.empty()) return usage_error(err, "fixtures requires --run-dir");
    const auto dir = options.run_dir;

    std::string dataset_text;
    for (const auto& question : bench::fixture_questions())
        dataset_text += question_to_json_line(question);
    if (auto s = write_file(dir / "dataset.jsonl", dataset_text); !s.ok()) return fail(err, s.error());

    if (auto s = bench::save_outcome_table(bench::reference_grids(), dir / "grids.json"); !s.ok())
        return fail(err, s.error());

    auto kit = load_kit(options);
    if (!kit.ok()) return fail(err, kit.error());

    // Regenerate the demo run and its cassettes from scratch so stale
    // recordings never pile up behind a resume-skip.
    std::error_code ec;
    std::filesystem::remove_all(dir / "seed-run", ec);
    std::filesystem::remove_all(dir / "cassettes", ec);

    bench::RunConfig seed;
    seed.run_dir = dir / "seed-run";
    seed.cassette_dir = dir / "cassettes";
    seed.k = 5;
    seed.parallel = options.parallel;
    seed.mode = bench::CassetteMode::record;
    seed.budget = options.budget;
    seed.models = {bench::ModelSpec{"scenario-model", gateway::Dialect::completions,
                                    "Scenario Model"}};
    seed.questions = bench::fixture_questions();

    auto output = bench::run_trials(
        seed, kit.value(), bench::recording_backend_factory(bench::scenario_backend_factory()));
    if (!output.ok()) return fail(err, output.error());
    auto table = bench::write_scores(seed, output.value().records);
    if (!table.ok()) return fail(err, table.error());
    if (auto s = report::write_figures(table.value(), seed.run_dir); !s.ok())
        return fail(err, s.error());

    std::ostringstream conf;
    conf << "# Replay the bundled demo run against its recorded cassettes.\n"
         << "dataset=" << (dir / "dataset.jsonl").string() << '\n'
         << "run_dir=" << (dir / "replay-run").string() << '\n'
         << "cassette=replay\n"
         << "cassette_dir=" << (dir / "cassettes").string() << '\n'
         << "templates=" << options.templates.string() << '\n'
         << "models=scenario-model:completions:Scenario Model\n"
         << "k=5\n";
    if (auto s = write_file(dir / "replay.conf", conf.str()); !s.ok()) return fail(err, s.error());

    out << "fixtures written to " << dir.string() << ":\n"
        << "  dataset.jsonl  bundled two-question dataset\n"
        << "  grids.json     reference outcome grids (score/report with --grids)\n"
        << "  cassettes/     recorded demo exchanges\n"
        << "  seed-run/      scored demo run\n"
        << "  replay.conf    ready config: run --config " << (dir / "replay.conf").string()
        << '\n';
    return 0;
}

} // namespace cotforge::cli
