#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cotforge/bench/fixtures.hpp"
#include "cotforge/bench/harness.hpp"
#include "cotforge/bench/records.hpp"
#include "cotforge/bench/scenarios.hpp"
#include "cotforge/engine/orchestrator.hpp"

using namespace cotforge;
using namespace cotforge::bench;

namespace {

namespace fs = std::filesystem;

prompts::PromptKit load_kit() {
    auto lib = prompts::PromptLibrary::load_dir(COTFORGE_REPO_TEMPLATES);
    REQUIRE(lib.ok());
    return prompts::PromptKit(lib.take());
}

fs::path scratch_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "cotforge_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.is_open());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

TrialRecord sample_record() {
    TrialRecord record;
    record.model_id = "model-x";
    record.model_label = "Model X";
    record.question_id = "q5";
    record.trial = 2;
    record.chosen = 'B';
    record.correct = true;
    record.unparsed = false;
    record.restarts_used = 1;
    record.calls_used = 7;
    record.usage.prompt_tokens = 120;
    record.usage.completion_tokens = 48;
    record.usage.calls = 7;
    record.transcript_path = "transcripts/Model_X/q5/trial2.log";
    return record;
}

RunConfig scenario_config(const fs::path& run_dir, CassetteMode mode) {
    RunConfig config;
    config.run_dir = run_dir;
    config.k = 5;
    config.parallel = 1;
    config.mode = mode;
    config.models = {ModelSpec{"scenario-model", gateway::Dialect::completions,
                               "Scenario Model"}};
    config.questions = fixture_questions();
    return config;
}

} // namespace

TEST_CASE("trial record: JSON round trip preserves every field") {
    const TrialRecord record = sample_record();
    auto loaded = trial_record_from_json_text(trial_record_to_json_text(record), "test");
    REQUIRE(loaded.ok());
    const TrialRecord& back = loaded.value();
    CHECK(back.model_id == record.model_id);
    CHECK(back.model_label == record.model_label);
    CHECK(back.question_id == record.question_id);
    CHECK(back.trial == record.trial);
    REQUIRE(back.chosen.has_value());
    CHECK(*back.chosen == 'B');
    CHECK(back.correct == record.correct);
    CHECK(back.unparsed == record.unparsed);
    CHECK(back.restarts_used == record.restarts_used);
    CHECK(back.calls_used == record.calls_used);
    CHECK(back.usage.prompt_tokens == record.usage.prompt_tokens);
    CHECK(back.usage.completion_tokens == record.usage.completion_tokens);
    CHECK(back.usage.calls == record.usage.calls);
    CHECK(back.transcript_path == record.transcript_path);
}

TEST_CASE("trial record: unparsed records round trip with a null letter") {
    TrialRecord record = sample_record();
    record.chosen.reset();
    record.correct = false;
    record.unparsed = true;
    auto loaded = trial_record_from_json_text(trial_record_to_json_text(record), "test");
    REQUIRE(loaded.ok());
    CHECK_FALSE(loaded.value().chosen.has_value());
    CHECK(loaded.value().unparsed);
    CHECK_FALSE(loaded.value().correct);
}

TEST_CASE("trial record: invariant violations are rejected") {
    TrialRecord unparsed_with_letter = sample_record();
    unparsed_with_letter.unparsed = true;
    CHECK_FALSE(unparsed_with_letter.validate().ok());

    TrialRecord unparsed_correct = sample_record();
    unparsed_correct.chosen.reset();
    unparsed_correct.unparsed = true;
    unparsed_correct.correct = true;
    CHECK_FALSE(unparsed_correct.validate().ok());

    TrialRecord correct_without_letter = sample_record();
    correct_without_letter.chosen.reset();
    CHECK_FALSE(correct_without_letter.validate().ok());

    TrialRecord zero_trial = sample_record();
    zero_trial.trial = 0;
    CHECK_FALSE(zero_trial.validate().ok());

    CHECK(sample_record().validate().ok());
}

TEST_CASE("trial record: file save is atomic and loads back") {
    const fs::path dir = scratch_dir("record_io");
    const fs::path path = dir / "records" / "m" / "q5" / "trial1.json";
    REQUIRE(save_trial_record(sample_record(), path).ok());
    CHECK(fs::exists(path));
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
    auto loaded = load_trial_record(path);
    REQUIRE(loaded.ok());
    CHECK(loaded.value().question_id == "q5");
}

TEST_CASE("records.jsonl: round trip preserves order and content") {
    const fs::path dir = scratch_dir("records_jsonl");
    std::vector<TrialRecord> records;
    for (int trial = 1; trial <= 3; ++trial) {
        TrialRecord record = sample_record();
        record.trial = trial;
        record.correct = (trial != 2);
        if (trial == 2) {
            record.chosen = 'D';
        }
        records.push_back(record);
    }
    const fs::path path = dir / "records.jsonl";
    REQUIRE(save_records_jsonl(records, path).ok());
    auto loaded = load_records_jsonl(path);
    REQUIRE(loaded.ok());
    REQUIRE(loaded.value().size() == 3);
    CHECK(loaded.value()[0].trial == 1);
    CHECK(loaded.value()[1].trial == 2);
    CHECK_FALSE(loaded.value()[1].correct);
    CHECK(loaded.value()[2].trial == 3);
}

TEST_CASE("outcomes_from_records: builds the grid and flags holes") {
    std::vector<TrialRecord> records;
    for (int trial = 1; trial <= 2; ++trial) {
        TrialRecord record = sample_record();
        record.trial = trial;
        record.correct = (trial == 1);
        if (trial != 1) {
            record.chosen = 'D';
        }
        records.push_back(record);
    }
    auto table = outcomes_from_records(records, {"Model X"}, {"q5"}, 2);
    REQUIRE(table.ok());
    auto row = table.value().row("Model X", "q5");
    REQUIRE(row.ok());
    CHECK(row.value() == std::vector<bool>{true, false});

    // a missing trial is a missing_cell naming the hole
    records.pop_back();
    auto missing = outcomes_from_records(records, {"Model X"}, {"q5"}, 2);
    REQUIRE_FALSE(missing.ok());
    CHECK(missing.error().kind == ErrorKind::missing_cell);
    CHECK(missing.error().message.find("Model X") != std::string::npos);
    CHECK(missing.error().message.find("q5") != std::string::npos);
    CHECK(missing.error().message.find("trial 2") != std::string::npos);
}

TEST_CASE("outcomes_from_records: duplicates and out-of-range trials are schema errors") {
    TrialRecord record = sample_record();
    record.trial = 1;
    auto duplicate = outcomes_from_records({record, record}, {"Model X"}, {"q5"}, 1);
    REQUIRE_FALSE(duplicate.ok());
    CHECK(duplicate.error().kind == ErrorKind::schema);

    TrialRecord outside = sample_record();
    outside.trial = 9;
    auto out_of_range = outcomes_from_records({outside}, {"Model X"}, {"q5"}, 1);
    REQUIRE_FALSE(out_of_range.ok());
    CHECK(out_of_range.error().kind == ErrorKind::schema);
}

TEST_CASE("run paths: file-safe mapping and layout") {
    CHECK(RunPaths::safe("Claude-3-Opus-2024-02-29 - CoT Enhanced") ==
          "Claude-3-Opus-2024-02-29_-_CoT_Enhanced");
    CHECK(RunPaths::safe("a/b\\c:d") == "a_b_c_d");
    CHECK(RunPaths::safe("") == "_");

    RunConfig config;
    config.run_dir = "/tmp/run";
    const RunPaths paths = paths_for(config);
    CHECK(paths.cassette_root == fs::path("/tmp/run/cassettes"));
    CHECK(paths.cassette("Model X", "q5", 3) ==
          fs::path("/tmp/run/cassettes/Model_X/q5/trial3.jsonl"));
    CHECK(paths.transcript("Model X", "q5", 3) ==
          fs::path("/tmp/run/transcripts/Model_X/q5/trial3.log"));
    CHECK(paths.transcript_rel("Model X", "q5", 3) == "transcripts/Model_X/q5/trial3.log");
    CHECK(paths.record("Model X", "q5", 3) ==
          fs::path("/tmp/run/records/Model_X/q5/trial3.json"));
    CHECK(paths.results_txt("Model X") == fs::path("/tmp/run/results.Model_X.txt"));

    RunConfig custom = config;
    custom.cassette_dir = "/elsewhere/tapes";
    CHECK(paths_for(custom).cassette("M", "q", 1) ==
          fs::path("/elsewhere/tapes/M/q/trial1.jsonl"));
}

TEST_CASE("run config: validation catches duplicate labels and label collisions") {
    RunConfig config = scenario_config("/tmp/run", CassetteMode::replay);
    CHECK(config.validate().ok());

    RunConfig duplicate = config;
    duplicate.models.push_back(duplicate.models.front());
    CHECK_FALSE(duplicate.validate().ok());

    RunConfig collision = config;
    collision.models.push_back(
        ModelSpec{"other-id", gateway::Dialect::completions, "Scenario/Model"});
    auto status = collision.validate();
    REQUIRE_FALSE(status.ok());
    CHECK(status.error().message.find("file-safe") != std::string::npos);

    RunConfig no_models = config;
    no_models.models.clear();
    CHECK_FALSE(no_models.validate().ok());

    RunConfig bad_k = config;
    bad_k.k = 0;
    CHECK_FALSE(bad_k.validate().ok());
}

TEST_CASE("cassette mode: names round trip and bad names fail") {
    for (auto mode : {CassetteMode::live, CassetteMode::record, CassetteMode::replay}) {
        auto parsed = cassette_mode_from_string(to_string(mode));
        REQUIRE(parsed.ok());
        CHECK(parsed.value() == mode);
    }
    CHECK_FALSE(cassette_mode_from_string("stream").ok());
}

TEST_CASE("manifest: JSON round trip") {
    RunConfig config = scenario_config("/tmp/run", CassetteMode::record);
    config.budget.max_restarts = 2;
    config.budget.max_total_calls = 60;
    config.budget.step_budget.max_steps = 7;
    auto manifest = manifest_of(config);
    auto loaded = manifest_from_json_text(manifest_to_json_text(manifest), "test");
    REQUIRE(loaded.ok());
    CHECK(loaded.value().k == 5);
    CHECK(loaded.value().mode == CassetteMode::record);
    CHECK(loaded.value().budget.max_restarts == 2);
    CHECK(loaded.value().budget.max_total_calls == 60);
    CHECK(loaded.value().budget.step_budget.max_steps == 7);
    REQUIRE(loaded.value().models.size() == 1);
    CHECK(loaded.value().models[0].id == "scenario-model");
    CHECK(loaded.value().models[0].label == "Scenario Model");
    CHECK(loaded.value().question_ids == std::vector<std::string>{"q5", "q9"});
}

TEST_CASE("scenario scripts: all ten trials exist with the expected grid") {
    for (const auto& question : fixture_questions()) {
        for (int trial = 1; trial <= 5; ++trial) {
            auto script = scenario_script(question.id, trial);
            REQUIRE(script.ok());
            CHECK_FALSE(script.value().empty());
        }
        CHECK(scenario_expected(question.id).size() == 5);
    }
    CHECK(scenario_expected("q5") == std::vector<bool>{true, true, true, false, true});
    CHECK(scenario_expected("q9") == std::vector<bool>{true, false, true, false, true});
    CHECK_FALSE(scenario_script("q7", 1).ok());
    CHECK_FALSE(scenario_script("q5", 6).ok());
}

TEST_CASE("run_trials: scenario run produces the expected grid and resumes cleanly") {
    const fs::path dir = scratch_dir("scenario_run");
    RunConfig config = scenario_config(dir, CassetteMode::replay);
    const auto kit = load_kit();

    auto output = run_trials(config, kit, scenario_backend_factory());
    REQUIRE(output.ok());
    CHECK(output.value().executed == 10);
    CHECK(output.value().resumed == 0);
    REQUIRE(output.value().records.size() == 10);

    auto q5_row = output.value().outcomes.row("Scenario Model", "q5");
    REQUIRE(q5_row.ok());
    CHECK(q5_row.value() == scenario_expected("q5"));
    auto q9_row = output.value().outcomes.row("Scenario Model", "q9");
    REQUIRE(q9_row.ok());
    CHECK(q9_row.value() == scenario_expected("q9"));

    CHECK(fs::exists(dir / "records.jsonl"));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "records/Scenario_Model/q5/trial1.json"));
    CHECK(fs::exists(dir / "transcripts/Scenario_Model/q9/trial5.log"));

    // the q5 restart trial really restarted; the unparsed q9 trial is flagged
    const auto& records = output.value().records;
    CHECK(records[2].restarts_used == 1);   // q5 trial 3
    CHECK(records[6].unparsed);             // q9 trial 2
    CHECK_FALSE(records[6].chosen.has_value());
    CHECK(records[7].calls_used == 22);     // q9 trial 3: ten gated steps + check + final
    CHECK(records[8].restarts_used == 2);   // q9 trial 4: ledger starved after two

    // second invocation resumes from the record files without running
    auto again = run_trials(config, kit, scenario_backend_factory());
    REQUIRE(again.ok());
    CHECK(again.value().executed == 0);
    CHECK(again.value().resumed == 10);
    REQUIRE(again.value().records.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(trial_record_to_json_text(again.value().records[i]) ==
              trial_record_to_json_text(output.value().records[i]));
    }
}

TEST_CASE("run_trials: parallel workers produce byte-identical records.jsonl") {
    const fs::path serial_dir = scratch_dir("scenario_serial");
    const fs::path parallel_dir = scratch_dir("scenario_parallel");
    const auto kit = load_kit();

    RunConfig serial = scenario_config(serial_dir, CassetteMode::replay);
    RunConfig parallel = scenario_config(parallel_dir, CassetteMode::replay);
    parallel.parallel = 4;

    REQUIRE(run_trials(serial, kit, scenario_backend_factory()).ok());
    REQUIRE(run_trials(parallel, kit, scenario_backend_factory()).ok());
    CHECK(slurp(serial_dir / "records.jsonl") == slurp(parallel_dir / "records.jsonl"));
}

TEST_CASE("write_scores: scenario grid renders the expected tables") {
    const fs::path dir = scratch_dir("scenario_scores");
    RunConfig config = scenario_config(dir, CassetteMode::replay);
    const auto kit = load_kit();
    auto output = run_trials(config, kit, scenario_backend_factory());
    REQUIRE(output.ok());

    auto table = write_scores(config, output.value().records);
    REQUIRE(table.ok());

    const std::string results = slurp(dir / "results.Scenario_Model.txt");
    CHECK(results.find("Scenario Model\n") == 0);
    CHECK(results.find("q5:\t1\t1\t1\t0\t1\t80%\t120%") != std::string::npos);
    CHECK(results.find("q9:\t1\t0\t1\t0\t1\t60%\t45%") != std::string::npos);
    CHECK(results.find("TOTAL AVG\tAVERAGE EAG\n70%\t83%\n") != std::string::npos);

    const std::string summary = slurp(dir / "summary.txt");
    CHECK(summary.find("Scenario Model\nTOTAL AVG\tAVERAGE EAG\n70%\t83%\n") !=
          std::string::npos);
    CHECK(fs::exists(dir / "scores.json"));
}

TEST_CASE("record mode then replay mode reproduces byte-identical artifacts") {
    const fs::path record_dir = scratch_dir("rr_record");
    const auto kit = load_kit();

    RunConfig record_config = scenario_config(record_dir, CassetteMode::record);
    auto recorded = run_trials(record_config, kit,
                               recording_backend_factory(scenario_backend_factory()));
    REQUIRE(recorded.ok());
    REQUIRE(write_scores(record_config, recorded.value().records).ok());
    CHECK(fs::exists(record_dir / "cassettes/Scenario_Model/q5/trial1.jsonl"));

    auto replay_once = [&](const std::string& name) {
        const fs::path dir = scratch_dir(name);
        RunConfig config = scenario_config(dir, CassetteMode::replay);
        config.cassette_dir = record_dir / "cassettes";
        auto output = run_trials(config, kit, replay_backend_factory());
        REQUIRE(output.ok());
        REQUIRE(write_scores(config, output.value().records).ok());
        return dir;
    };

    const fs::path replay_a = replay_once("rr_replay_a");
    const fs::path replay_b = replay_once("rr_replay_b");

    for (const char* artifact :
         {"records.jsonl", "results.Scenario_Model.txt", "summary.txt", "scores.json"}) {
        CAPTURE(artifact);
        const std::string recorded_bytes = slurp(record_dir / artifact);
        CHECK(recorded_bytes == slurp(replay_a / artifact));
        CHECK(slurp(replay_a / artifact) == slurp(replay_b / artifact));
    }
}

TEST_CASE("replay: an empty cassette degrades the trial to unparsed, not a crash") {
    const fs::path dir = scratch_dir("replay_miss");
    RunConfig config = scenario_config(dir, CassetteMode::replay);
    config.k = 1;
    config.questions = {fixture_questions().front()};
    const auto kit = load_kit();

    // materialize an empty cassette for the single cell
    const RunPaths paths = paths_for(config);
    const fs::path cassette = paths.cassette("Scenario Model", "q5", 1);
    fs::create_directories(cassette.parent_path());
    std::ofstream(cassette).close();

    auto output = run_trials(config, kit, replay_backend_factory());
    REQUIRE(output.ok());
    REQUIRE(output.value().records.size() == 1);
    CHECK(output.value().records[0].unparsed);
    CHECK_FALSE(output.value().records[0].correct);
}

TEST_CASE("run_trials: a missing cassette file is a harness error") {
    const fs::path dir = scratch_dir("replay_absent");
    RunConfig config = scenario_config(dir, CassetteMode::replay);
    const auto kit = load_kit();
    auto output = run_trials(config, kit, replay_backend_factory());
    REQUIRE_FALSE(output.ok());
    CHECK(output.error().kind == ErrorKind::io);
}
