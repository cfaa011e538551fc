#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cotforge/bench/harness.hpp"
#include "cotforge/result.hpp"

namespace cotforge::cli {

/// Option values as given on the command line. Empty strings and negative
/// numbers mean "not provided" and may be filled from a config file.
struct RawOptions {
    std::string dataset;
    std::string run_dir;
    std::string models;       // comma-separated id[:dialect[:label]] entries
    std::string cassette;     // live | record | replay
    std::string cassette_dir; // defaults to <run_dir>/cassettes
    std::string templates;    // prompt template directory
    std::string grids;        // score/report straight from an outcome-table file
    std::string config;       // key=value config file
    int k = -1;
    int parallel = -1;
    int max_steps = -1;
    int max_revisions = -1;
    int max_restarts = -1;
    int max_total_calls = -1;
};

/// Fully resolved options: flags override config-file values; defaults fill
/// whatever remains.
struct Options {
    std::filesystem::path dataset;
    std::filesystem::path run_dir;
    std::filesystem::path cassette_dir;
    std::filesystem::path templates = "templates";
    std::filesystem::path grids;
    std::vector<bench::ModelSpec> models;
    int k = 5;
    int parallel = 1;
    bench::CassetteMode mode = bench::CassetteMode::replay;
    engine::RunBudget budget;
};

/// Parses a comma-separated model list. Each entry is id[:dialect[:label]];
/// the label may itself contain colons.
Result<std::vector<bench::ModelSpec>> parse_models(const std::string& spec);

/// Reads a key=value config file. '#' starts a comment, blank lines are
/// skipped, keys and values are trimmed. Unknown keys are rejected.
Result<std::map<std::string, std::string>> load_config_file(const std::filesystem::path& path);

/// Merges flag values over config-file values over built-in defaults.
Result<Options> resolve_options(const RawOptions& raw);

// Subcommand bodies. Human-facing output goes to `out`, diagnostics to
// `err`. Exit codes: 0 success, 1 usage/config/data error, 2 partially
// completed run (rerun the same command to resume).
int cmd_run(const Options& options, std::ostream& out, std::ostream& err);
int cmd_score(const Options& options, std::ostream& out, std::ostream& err);
int cmd_report(const Options& options, std::ostream& out, std::ostream& err);
int cmd_replay(const Options& options, std::ostream& out, std::ostream& err);
int cmd_fixtures(const Options& options, std::ostream& out, std::ostream& err);

} // namespace cotforge::cli
