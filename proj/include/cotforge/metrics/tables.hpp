#pragma once

#include <string>
#include <vector>

#include "cotforge/bench/outcomes.hpp"
#include "cotforge/metrics/metrics.hpp"

namespace cotforge::metrics {

std::string metric_avg_label(int k);
std::string metric_eag_label(int k);

/// One rendered table row: per-trial 0/1 cells followed by the two rounded
/// percent columns.
struct ResultRow {
    std::string question;
    std::vector<bool> outcomes;
    long avg_pct = 0;
    long eag_pct = 0;

    std::vector<std::string> cells() const;
};

Result<std::vector<ResultRow>> result_rows(const bench::OutcomeTable& table,
                                           const std::string& model);

/// Tab-separated per-model results table: header row with trial columns and
/// metric labels, one row per question, then the total/average pair.
Result<std::string> render_results_file(const bench::OutcomeTable& table,
                                        const std::string& model);

/// Tab-separated totals block for every model in table order.
Result<std::string> render_summary_file(const bench::OutcomeTable& table);

/// Structured scores for downstream consumers (figures), carrying exactly
/// the values the text tables print.
Result<std::string> scores_to_json_text(const bench::OutcomeTable& table);

} // namespace cotforge::metrics
