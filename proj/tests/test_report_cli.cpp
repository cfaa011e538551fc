#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cotforge/bench/fixtures.hpp"
#include "cotforge/bench/question.hpp"
#include "cotforge/cli/cli.hpp"
#include "cotforge/metrics/tables.hpp"
#include "cotforge/report/figures.hpp"

using namespace cotforge;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / "cotforge_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    REQUIRE(out.good());
}

std::size_t count_of(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++count;
    return count;
}

const std::vector<std::string>& grid_labels() {
    static const std::vector<std::string> labels{
        "GPT-4o-2024-08-06",
        "GPT-4o-2024-08-06 - CoT Enhanced",
        "GPT-o1-preview-2024-09-12",
        "Claude-3.5-Sonnet-2024-10-22",
        "Claude-3-Opus-2024-02-29",
        "Claude-3-Opus-2024-02-29 - CoT Enhanced",
    };
    return labels;
}

cli::Options fixture_options(const fs::path& dir) {
    cli::Options options;
    options.run_dir = dir;
    options.templates = COTFORGE_REPO_TEMPLATES;
    return options;
}

} // namespace

TEST_CASE("figure bars carry the golden totals in table order") {
    const auto table = bench::reference_grids();

    auto avg = report::avg_bars(table);
    REQUIRE(avg.ok());
    auto eag = report::eag_bars(table);
    REQUIRE(eag.ok());

    const std::vector<long> avg_values{20, 36, 34, 52, 22, 42};
    const std::vector<long> eag_values{5, 39, 32, 67, 14, 48};
    REQUIRE(avg.value().size() == 6);
    REQUIRE(eag.value().size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(avg.value()[i].label == grid_labels()[i]);
        CHECK(avg.value()[i].value == avg_values[i]);
        CHECK(eag.value()[i].label == grid_labels()[i]);
        CHECK(eag.value()[i].value == eag_values[i]);
    }
}

TEST_CASE("figure data renders one tab-separated line per bar") {
    std::vector<report::Bar> bars{{"Model A", 20}, {"Model B", -25}};
    CHECK(report::render_dat(bars) == "Model A\t20\nModel B\t-25\n");
    CHECK(report::render_dat({}).empty());
}

TEST_CASE("svg chart draws positive and negative bars around a zero axis") {
    std::vector<report::Bar> bars{{"Up", 40}, {"Down", -25}, {"Flat", 0}};
    const std::string svg = report::render_svg(bars, "Demo & Chart");

    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") == 0);
    CHECK(svg.find("Demo &amp; Chart") != std::string::npos);
    // One background rect plus one rect per bar.
    CHECK(count_of(svg, "<rect") == 1 + bars.size());
    // Negative bars pick up the alternate fill; the zero axis is drawn darker.
    CHECK(svg.find("#e15759") != std::string::npos);
    CHECK(svg.find("stroke=\"#555555\"") != std::string::npos);
    CHECK(svg.find(">40%<") != std::string::npos);
    CHECK(svg.find(">-25%<") != std::string::npos);
    CHECK(svg.find(">Up<") != std::string::npos);

    SUBCASE("labels are XML-escaped") {
        const std::string escaped =
            report::render_svg({{"A<B> \"quoted\" & 'more'", 3}}, "t");
        CHECK(escaped.find("A&lt;B&gt; &quot;quoted&quot; &amp; &apos;more&apos;") !=
              std::string::npos);
        CHECK(escaped.find("A<B>") == std::string::npos);
    }

    SUBCASE("an all-zero chart still renders") {
        const std::string flat = report::render_svg({{"Z", 0}}, "t");
        CHECK(flat.find("<svg") == 0);
        CHECK(count_of(flat, "<rect") == 2);
    }
}

TEST_CASE("write_figures emits the four figure files with table values") {
    const auto dir = scratch_dir("figures");
    const auto table = bench::reference_grids();
    REQUIRE(report::write_figures(table, dir).ok());

    const std::string avg_dat = slurp(dir / "fig_avg.dat");
    const std::string eag_dat = slurp(dir / "fig_eag.dat");
    CHECK(avg_dat.find("GPT-4o-2024-08-06\t20\n") != std::string::npos);
    CHECK(avg_dat.find("Claude-3.5-Sonnet-2024-10-22\t52\n") != std::string::npos);
    CHECK(eag_dat.find("GPT-4o-2024-08-06\t5\n") != std::string::npos);
    CHECK(eag_dat.find("Claude-3-Opus-2024-02-29 - CoT Enhanced\t48\n") != std::string::npos);

    const std::string avg_svg = slurp(dir / "fig_avg.svg");
    CHECK(avg_svg.find("Total AVG@5") != std::string::npos);
    const std::string eag_svg = slurp(dir / "fig_eag.svg");
    CHECK(eag_svg.find("Average EAG@5") != std::string::npos);
}

TEST_CASE("model list parsing handles ids, dialects, and labels") {
    auto full = cli::parse_models(
        "gpt-4o:completions:GPT-4o, claude-3-opus:anthropic:Claude 3 Opus,bare-model");
    REQUIRE(full.ok());
    REQUIRE(full.value().size() == 3);
    CHECK(full.value()[0].id == "gpt-4o");
    CHECK(full.value()[0].dialect == gateway::Dialect::completions);
    CHECK(full.value()[0].label == "GPT-4o");
    CHECK(full.value()[1].id == "claude-3-opus");
    CHECK(full.value()[1].dialect == gateway::Dialect::anthropic);
    CHECK(full.value()[1].label == "Claude 3 Opus");
    CHECK(full.value()[2].id == "bare-model");
    CHECK(full.value()[2].dialect == gateway::Dialect::completions);
    CHECK(full.value()[2].display_label() == "bare-model");

    SUBCASE("labels may contain colons") {
        auto colons = cli::parse_models("m:anthropic:Label: with colon");
        REQUIRE(colons.ok());
        CHECK(colons.value()[0].label == "Label: with colon");
    }

    SUBCASE("unknown dialect is rejected") {
        auto bad = cli::parse_models("m:telepathy");
        REQUIRE(!bad.ok());
        CHECK(bad.error().kind == ErrorKind::config);
        CHECK(bad.error().message.find("telepathy") != std::string::npos);
    }

    SUBCASE("empty list is rejected") {
        CHECK(!cli::parse_models("").ok());
        CHECK(!cli::parse_models(" , ,").ok());
    }

    SUBCASE("entry without an id is rejected") {
        CHECK(!cli::parse_models(":completions:X").ok());
    }
}

TEST_CASE("config file parsing trims, skips comments, rejects unknown keys") {
    const auto dir = scratch_dir("config");
    write_text(dir / "good.conf",
               "# demo config\n"
               "dataset = data/questions.jsonl\n"
               "\n"
               "k=3   # trailing comment\n"
               "models=scenario-model:completions:Scenario Model\n"
               "cot.max_restarts=1\n");

    auto values = cli::load_config_file(dir / "good.conf");
    REQUIRE(values.ok());
    CHECK(values.value().at("dataset") == "data/questions.jsonl");
    CHECK(values.value().at("k") == "3");
    CHECK(values.value().at("models") == "scenario-model:completions:Scenario Model");
    CHECK(values.value().at("cot.max_restarts") == "1");

    write_text(dir / "unknown.conf", "banana=yes\n");
    auto unknown = cli::load_config_file(dir / "unknown.conf");
    REQUIRE(!unknown.ok());
    CHECK(unknown.error().message.find("banana") != std::string::npos);
    CHECK(unknown.error().message.find("line 1") != std::string::npos);

    write_text(dir / "noeq.conf", "dataset\n");
    auto noeq = cli::load_config_file(dir / "noeq.conf");
    REQUIRE(!noeq.ok());
    CHECK(noeq.error().message.find("key=value") != std::string::npos);

    CHECK(!cli::load_config_file(dir / "missing.conf").ok());
}

TEST_CASE("option resolution layers flags over config over defaults") {
    const auto dir = scratch_dir("resolve");
    write_text(dir / "run.conf",
               "dataset=from-config.jsonl\n"
               "run_dir=config-run\n"
               "k=2\n"
               "parallel=4\n"
               "cassette=record\n"
               "templates=config-templates\n"
               "models=a-model:anthropic\n"
               "cot.max_steps=7\n"
               "cot.max_revisions=1\n"
               "cot.max_restarts=2\n"
               "cot.max_total_calls=50\n");

    SUBCASE("config values fill unset flags") {
        cli::RawOptions raw;
        raw.config = (dir / "run.conf").string();
        auto options = cli::resolve_options(raw);
        REQUIRE(options.ok());
        CHECK(options.value().dataset == "from-config.jsonl");
        CHECK(options.value().run_dir == "config-run");
        CHECK(options.value().k == 2);
        CHECK(options.value().parallel == 4);
        CHECK(options.value().mode == bench::CassetteMode::record);
        CHECK(options.value().templates == "config-templates");
        REQUIRE(options.value().models.size() == 1);
        CHECK(options.value().models[0].dialect == gateway::Dialect::anthropic);
        CHECK(options.value().budget.step_budget.max_steps == 7);
        CHECK(options.value().budget.step_budget.max_revisions == 1);
        CHECK(options.value().budget.max_restarts == 2);
        CHECK(options.value().budget.max_total_calls == 50);
    }

    SUBCASE("flags take precedence") {
        cli::RawOptions raw;
        raw.config = (dir / "run.conf").string();
        raw.dataset = "from-flag.jsonl";
        raw.k = 9;
        raw.cassette = "replay";
        raw.max_restarts = 0;
        auto options = cli::resolve_options(raw);
        REQUIRE(options.ok());
        CHECK(options.value().dataset == "from-flag.jsonl");
        CHECK(options.value().k == 9);
        CHECK(options.value().mode == bench::CassetteMode::replay);
        CHECK(options.value().budget.max_restarts == 0);
        // Untouched values still come from the config file.
        CHECK(options.value().run_dir == "config-run");
    }

    SUBCASE("defaults apply without any input") {
        auto options = cli::resolve_options(cli::RawOptions{});
        REQUIRE(options.ok());
        CHECK(options.value().k == 5);
        CHECK(options.value().parallel == 1);
        CHECK(options.value().mode == bench::CassetteMode::replay);
        CHECK(options.value().templates == "templates");
        CHECK(options.value().budget.max_restarts == 3);
        CHECK(options.value().budget.max_total_calls == 120);
        CHECK(options.value().budget.step_budget.max_steps == 10);
        CHECK(options.value().budget.step_budget.max_revisions == 2);
    }

    SUBCASE("garbage counts in the config are rejected") {
        write_text(dir / "bad.conf", "k=many\n");
        cli::RawOptions raw;
        raw.config = (dir / "bad.conf").string();
        auto options = cli::resolve_options(raw);
        REQUIRE(!options.ok());
        CHECK(options.error().message.find("k") != std::string::npos);
    }

    SUBCASE("bad cassette mode is rejected") {
        cli::RawOptions raw;
        raw.cassette = "stream";
        CHECK(!cli::resolve_options(raw).ok());
    }
}

TEST_CASE("score subcommand prints the golden summary from a grids file") {
    const auto dir = scratch_dir("cli_score");
    REQUIRE(bench::save_outcome_table(bench::reference_grids(), dir / "grids.json").ok());

    cli::Options options;
    options.grids = dir / "grids.json";
    options.run_dir = dir / "out";

    std::ostringstream out, err;
    CHECK(cli::cmd_score(options, out, err) == 0);
    CHECK(err.str().empty());

    auto expected = metrics::render_summary_file(bench::reference_grids());
    REQUIRE(expected.ok());
    CHECK(out.str() == expected.value());
    CHECK(out.str().find("GPT-4o-2024-08-06\nTOTAL AVG\tAVERAGE EAG\n20%\t5%\n") !=
          std::string::npos);
    CHECK(out.str().find("Claude-3-Opus-2024-02-29 - CoT Enhanced\nTOTAL AVG\tAVERAGE EAG\n"
                         "42%\t48%\n") != std::string::npos);

    CHECK(slurp(dir / "out" / "summary.txt") == expected.value());
    CHECK(fs::exists(dir / "out" / "scores.json"));
    CHECK(fs::exists(dir / "out" / "results.GPT-4o-2024-08-06.txt"));
    const std::string results = slurp(dir / "out" / "results.GPT-4o-2024-08-06.txt");
    CHECK(results.find("20%\t5%") != std::string::npos);

    SUBCASE("scoring is idempotent") {
        std::ostringstream again;
        CHECK(cli::cmd_score(options, again, err) == 0);
        CHECK(again.str() == out.str());
        CHECK(slurp(dir / "out" / "summary.txt") == expected.value());
    }

    SUBCASE("without a run dir the artifacts land next to the grids file") {
        cli::Options bare;
        bare.grids = dir / "grids.json";
        std::ostringstream bare_out;
        CHECK(cli::cmd_score(bare, bare_out, err) == 0);
        CHECK(fs::exists(dir / "summary.txt"));
    }
}

TEST_CASE("score subcommand fails cleanly without inputs") {
    cli::Options options;
    std::ostringstream out, err;
    CHECK(cli::cmd_score(options, out, err) == 1);
    CHECK(err.str().find("error:") != std::string::npos);

    SUBCASE("an empty run dir is a data error") {
        options.run_dir = scratch_dir("cli_score_empty");
        std::ostringstream out2, err2;
        CHECK(cli::cmd_score(options, out2, err2) == 1);
        CHECK(!err2.str().empty());
    }
}

TEST_CASE("report subcommand emits figures matching the score output") {
    const auto dir = scratch_dir("cli_report");
    REQUIRE(bench::save_outcome_table(bench::reference_grids(), dir / "grids.json").ok());

    cli::Options options;
    options.grids = dir / "grids.json";
    options.run_dir = dir / "out";

    std::ostringstream out, err;
    CHECK(cli::cmd_report(options, out, err) == 0);
    CHECK(out.str().find("fig_avg.svg") != std::string::npos);

    auto avg = report::avg_bars(bench::reference_grids());
    REQUIRE(avg.ok());
    CHECK(slurp(dir / "out" / "fig_avg.dat") == report::render_dat(avg.value()));
    CHECK(fs::exists(dir / "out" / "fig_eag.svg"));

    SUBCASE("an unscored run dir is an error") {
        cli::Options unscored;
        unscored.run_dir = scratch_dir("cli_report_unscored");
        std::ostringstream out2, err2;
        CHECK(cli::cmd_report(unscored, out2, err2) == 1);
        CHECK(!err2.str().empty());
    }
}

TEST_CASE("fixtures subcommand materializes dataset, grids, cassettes, and a demo run") {
    const auto dir = scratch_dir("cli_fixtures");
    auto options = fixture_options(dir);

    std::ostringstream out, err;
    REQUIRE(cli::cmd_fixtures(options, out, err) == 0);
    CHECK(err.str().empty());
    CHECK(out.str().find("replay.conf") != std::string::npos);

    auto questions = bench::load_dataset(dir / "dataset.jsonl");
    REQUIRE(questions.ok());
    REQUIRE(questions.value().size() == 2);
    CHECK(questions.value()[0].id == "q5");
    CHECK(questions.value()[0].answer == 'B');
    CHECK(questions.value()[1].id == "q9");
    CHECK(questions.value()[1].answer == 'A');
    CHECK(questions.value()[1].option_text('C') == questions.value()[1].option_text('E'));

    auto grids = bench::load_outcome_table(dir / "grids.json");
    REQUIRE(grids.ok());
    CHECK(grids.value().models == grid_labels());

    CHECK(fs::exists(dir / "cassettes" / "Scenario_Model" / "q5" / "trial1.jsonl"));
    CHECK(fs::exists(dir / "cassettes" / "Scenario_Model" / "q9" / "trial5.jsonl"));
    CHECK(fs::exists(dir / "seed-run" / "records.jsonl"));
    CHECK(fs::exists(dir / "seed-run" / "fig_avg.svg"));
    const std::string summary = slurp(dir / "seed-run" / "summary.txt");
    CHECK(summary.find("Scenario Model\nTOTAL AVG\tAVERAGE EAG\n70%\t83%\n") !=
          std::string::npos);

    SUBCASE("the emitted replay config drives a full offline run") {
        cli::RawOptions raw;
        raw.config = (dir / "replay.conf").string();
        auto resolved = cli::resolve_options(raw);
        REQUIRE(resolved.ok());
        CHECK(resolved.value().mode == bench::CassetteMode::replay);

        std::ostringstream run_out, run_err;
        REQUIRE(cli::cmd_run(resolved.value(), run_out, run_err) == 0);
        CHECK(run_err.str().empty());
        CHECK(run_out.str().find("10 executed, 0 resumed") != std::string::npos);
        CHECK(run_out.str().find("70%\t83%") != std::string::npos);

        // Replayed artifacts are byte-identical to the recorded seed run.
        CHECK(slurp(dir / "replay-run" / "records.jsonl") ==
              slurp(dir / "seed-run" / "records.jsonl"));
        CHECK(slurp(dir / "replay-run" / "summary.txt") ==
              slurp(dir / "seed-run" / "summary.txt"));

        SUBCASE("a second invocation resumes instead of re-running") {
            std::ostringstream resume_out, resume_err;
            REQUIRE(cli::cmd_run(resolved.value(), resume_out, resume_err) == 0);
            CHECK(resume_out.str().find("0 executed, 10 resumed") != std::string::npos);
        }
    }

    SUBCASE("regenerating fixtures is clean, not cumulative") {
        std::ostringstream out2, err2;
        REQUIRE(cli::cmd_fixtures(options, out2, err2) == 0);
        cli::RawOptions raw;
        raw.config = (dir / "replay.conf").string();
        raw.run_dir = (dir / "replay-run-2").string();
        auto resolved = cli::resolve_options(raw);
        REQUIRE(resolved.ok());
        std::ostringstream run_out, run_err;
        CHECK(cli::cmd_run(resolved.value(), run_out, run_err) == 0);
    }
}

TEST_CASE("run subcommand validates its inputs") {
    cli::Options options;
    std::ostringstream out, err;
    CHECK(cli::cmd_run(options, out, err) == 1);
    CHECK(err.str().find("--run-dir") != std::string::npos);

    options.run_dir = scratch_dir("cli_run_validate");
    std::ostringstream out2, err2;
    CHECK(cli::cmd_run(options, out2, err2) == 1);
    CHECK(err2.str().find("--dataset") != std::string::npos);

    options.dataset = "nowhere.jsonl";
    std::ostringstream out3, err3;
    CHECK(cli::cmd_run(options, out3, err3) == 1);
    CHECK(err3.str().find("--models") != std::string::npos);
}

TEST_CASE("replay subcommand requires an existing cassette directory") {
    const auto dir = scratch_dir("cli_replay_missing");
    cli::Options options = fixture_options(dir / "run");

    std::ostringstream out, err;
    CHECK(cli::cmd_replay(options, out, err) == 1);
    CHECK(err.str().find("cassette") != std::string::npos);
}

TEST_CASE("interrupted runs exit resumable and recover on rerun") {
    const auto dir = scratch_dir("cli_resume");
    auto fixtures = fixture_options(dir);
    std::ostringstream fix_out, fix_err;
    REQUIRE(cli::cmd_fixtures(fixtures, fix_out, fix_err) == 0);

    // Hide one question's cassettes to simulate an interrupted recording.
    fs::rename(dir / "cassettes" / "Scenario_Model" / "q9",
               dir / "cassettes" / "Scenario_Model" / "q9.hidden");

    cli::RawOptions raw;
    raw.config = (dir / "replay.conf").string();
    auto options = cli::resolve_options(raw);
    REQUIRE(options.ok());

    std::ostringstream out, err;
    CHECK(cli::cmd_run(options.value(), out, err) == 2);
    CHECK(err.str().find("resume") != std::string::npos);

    fs::rename(dir / "cassettes" / "Scenario_Model" / "q9.hidden",
               dir / "cassettes" / "Scenario_Model" / "q9");

    std::ostringstream out2, err2;
    CHECK(cli::cmd_run(options.value(), out2, err2) == 0);
    CHECK(out2.str().find("5 executed, 5 resumed") != std::string::npos);
    CHECK(out2.str().find("70%\t83%") != std::string::npos);
}
