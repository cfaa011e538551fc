#include <CLI11.hpp>

#include <iostream>

#include "cotforge/cli/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cotforge: iterative chain-of-thought benchmark harness"};
    app.require_subcommand(1);

    cotforge::cli::RawOptions raw;
    auto add_common = [&raw](CLI::App* cmd) {
        cmd->add_option("--dataset", raw.dataset, "line-delimited question file");
        cmd->add_option("--run-dir", raw.run_dir, "run directory for artifacts");
        cmd->add_option("--models", raw.models,
                        "comma-separated id[:dialect[:label]] entries "
                        "(dialects: completions, anthropic)");
        cmd->add_option("--k", raw.k, "trials per question (default 5)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--parallel", raw.parallel, "worker count (default 1)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--cassette", raw.cassette, "live | record | replay (default replay)");
        cmd->add_option("--cassette-dir", raw.cassette_dir,
                        "cassette directory (default <run-dir>/cassettes)");
        cmd->add_option("--templates", raw.templates,
                        "prompt template directory (default ./templates)");
        cmd->add_option("--grids", raw.grids, "score/report from an outcome-table JSON file");
        cmd->add_option("--config", raw.config, "key=value config file; flags take precedence");
        cmd->add_option("--max-steps", raw.max_steps, "step ceiling per chain")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--max-revisions", raw.max_revisions, "revision ceiling per step")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--max-restarts", raw.max_restarts, "restart ceiling per trial")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--max-total-calls", raw.max_total_calls,
                        "gateway call budget per trial")
            ->check(CLI::NonNegativeNumber);
    };

    CLI::App* run = app.add_subcommand("run", "execute benchmark trials");
    CLI::App* score = app.add_subcommand("score", "score a run into result tables");
    CLI::App* report = app.add_subcommand("report", "emit bar-chart data and SVG figures");
    CLI::App* replay = app.add_subcommand("replay", "re-run a recorded run from its cassettes");
    CLI::App* fixtures =
        app.add_subcommand("fixtures", "write the bundled dataset, grids, and demo run");
    for (CLI::App* cmd : {run, score, report, replay, fixtures}) add_common(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto options = cotforge::cli::resolve_options(raw);
    if (!options.ok()) {
        std::cerr << "error: " << options.error().describe() << '\n';
        return 1;
    }

    if (app.got_subcommand(run)) return cotforge::cli::cmd_run(options.value(), std::cout, std::cerr);
    if (app.got_subcommand(score))
        return cotforge::cli::cmd_score(options.value(), std::cout, std::cerr);
    if (app.got_subcommand(report))
        return cotforge::cli::cmd_report(options.value(), std::cout, std::cerr);
    if (app.got_subcommand(replay))
        return cotforge::cli::cmd_replay(options.value(), std::cout, std::cerr);
    if (app.got_subcommand(fixtures))
        return cotforge::cli::cmd_fixtures(options.value(), std::cout, std::cerr);
    std::cerr << "error: no subcommand selected\n";
    return 1;
}
