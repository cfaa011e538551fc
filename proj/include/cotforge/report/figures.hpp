#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cotforge/bench/outcomes.hpp"
#include "cotforge/result.hpp"

namespace cotforge::report {

/// One bar of a figure: a model label and its rounded percent value.
struct Bar {
    std::string label;
    long value = 0;
};

/// Bars for the total AVG@k figure, one per model in table order. Values are
/// exactly the rounded totals the score tables print.
Result<std::vector<Bar>> avg_bars(const bench::OutcomeTable& table);

/// Bars for the average EAG@k figure. Values may be negative.
Result<std::vector<Bar>> eag_bars(const bench::OutcomeTable& table);

/// Tab-separated figure data: one "label\tvalue" line per bar.
std::string render_dat(const std::vector<Bar>& bars);

/// Self-contained SVG bar chart. Negative values drop below the zero axis;
/// `unit` suffixes the value labels (usually "%").
std::string render_svg(const std::vector<Bar>& bars, const std::string& title,
                       const std::string& unit = "%");

/// Writes fig_avg.dat / fig_avg.svg / fig_eag.dat / fig_eag.svg into `dir`.
/// Figure titles are derived from the table's trial count k.
Status write_figures(const bench::OutcomeTable& table, const std::filesystem::path& dir);

} // namespace cotforge::report
