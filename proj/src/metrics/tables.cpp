#include "cotforge/metrics/tables.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace cotforge::metrics {

using nlohmann::json;

std::string metric_avg_label(int k) {
    return "AVG@" + std::to_string(k);
}

std::string metric_eag_label(int k) {
    return "EAG@" + std::to_string(k);
}

namespace {

std::string pct(long value) {
    return std::to_string(value) + "%";
}

} // namespace

std::vector<std::string> ResultRow::cells() const {
    std::vector<std::string> out;
    out.reserve(outcomes.size() + 2);
    for (bool b : outcomes) out.push_back(b ? "1" : "0");
    out.push_back(pct(avg_pct));
    out.push_back(pct(eag_pct));
    return out;
}

Result<std::vector<ResultRow>> result_rows(const bench::OutcomeTable& table,
                                           const std::string& model) {
    std::vector<ResultRow> rows;
    rows.reserve(table.questions.size());
    for (const auto& question : table.questions) {
        auto outcomes = table.row(model, question);
        if (!outcomes.ok()) return outcomes.error();
        const Rational avg = avg_at_k(outcomes.value());
        rows.push_back(ResultRow{
            .question = question,
            .outcomes = outcomes.take(),
            .avg_pct = round_pct(avg),
            .eag_pct = round_pct(eag_of(avg)),
        });
    }
    return rows;
}

Result<std::string> render_results_file(const bench::OutcomeTable& table,
                                        const std::string& model) {
    auto rows = result_rows(table, model);
    if (!rows.ok()) return rows.error();
    auto summary = summarize(table, model);
    if (!summary.ok()) return summary.error();

    std::ostringstream out;
    out << model << '\n';
    for (int trial = 1; trial <= table.k; ++trial)
        out << "\tTrial " << trial << ':';
    out << '\t' << metric_avg_label(table.k) << '\t' << metric_eag_label(table.k) << '\n';
    for (const auto& row : rows.value()) {
        out << row.question << ':';
        for (const auto& cell : row.cells()) out << '\t' << cell;
        out << '\n';
    }
    out << "TOTAL AVG\tAVERAGE EAG\n";
    out << pct(summary.value().total_avg_pct) << '\t' << pct(summary.value().avg_eag_pct) << '\n';
    return out.str();
}

Result<std::string> render_summary_file(const bench::OutcomeTable& table) {
    std::ostringstream out;
    for (const auto& model : table.models) {
        auto summary = summarize(table, model);
        if (!summary.ok()) return summary.error();
        out << model << '\n';
        out << "TOTAL AVG\tAVERAGE EAG\n";
        out << pct(summary.value().total_avg_pct) << '\t' << pct(summary.value().avg_eag_pct)
            << '\n';
    }
    return out.str();
}

Result<std::string> scores_to_json_text(const bench::OutcomeTable& table) {
    json models = json::array();
    for (const auto& model : table.models) {
        auto rows = result_rows(table, model);
        if (!rows.ok()) return rows.error();
        auto summary = summarize(table, model);
        if (!summary.ok()) return summary.error();
        json questions = json::array();
        for (const auto& row : rows.value()) {
            json bits = json::array();
            for (bool b : row.outcomes) bits.push_back(b ? 1 : 0);
            questions.push_back({
                {"id", row.question},
                {"outcomes", std::move(bits)},
                {"avg_pct", row.avg_pct},
                {"eag_pct", row.eag_pct},
            });
        }
        models.push_back({
            {"label", model},
            {"questions", std::move(questions)},
            {"total_avg_pct", summary.value().total_avg_pct},
            {"avg_eag_pct", summary.value().avg_eag_pct},
        });
    }
    json j{{"k", table.k}, {"models", std::move(models)}};
    return j.dump(2) + "\n";
}

} // namespace cotforge::metrics
