#include "cotforge/metrics/metrics.hpp"

#include <stdexcept>

namespace cotforge::metrics {

Rational avg_at_k(const std::vector<bool>& outcomes) {
    if (outcomes.empty())
        throw std::invalid_argument("avg_at_k: outcomes must be non-empty");
    long long correct = 0;
    for (bool b : outcomes)
        if (b) ++correct;
    return Rational(correct, static_cast<long long>(outcomes.size()));
}

Rational eag_of(const Rational& avg) {
    if (avg < Rational(0) || avg > Rational(1))
        throw std::domain_error("eag_of: avg must be in [0, 1]");
    if (avg == Rational(0)) return Rational(-1, 4);
    if (avg <= Rational(1, 3)) return avg / 2;
    if (avg <= Rational(2, 3)) return avg * Rational(3, 4);
    return avg * Rational(3, 2);
}

long round_pct(const Rational& x) {
    const Rational scaled = x * 100;
    long long n = scaled.numerator();
    long long d = scaled.denominator(); // boost keeps d > 0
    const long long sign = n < 0 ? -1 : 1;
    const long long mag = n < 0 ? -n : n;
    return static_cast<long>(sign * ((2 * mag + d) / (2 * d)));
}

Result<std::vector<QuestionScore>> question_scores(const bench::OutcomeTable& table,
                                                   const std::string& model) {
    std::vector<QuestionScore> scores;
    scores.reserve(table.questions.size());
    for (const auto& question : table.questions) {
        auto row = table.row(model, question);
        if (!row.ok()) return row.error();
        const Rational avg = avg_at_k(row.value());
        scores.push_back(QuestionScore{.avg = avg, .eag = eag_of(avg)});
    }
    return scores;
}

Result<ModelSummary> summarize(const bench::OutcomeTable& table, const std::string& model) {
    auto scores = question_scores(table, model);
    if (!scores.ok()) return scores.error();
    if (scores.value().empty())
        return make_error(ErrorKind::missing_cell, "no questions to summarize");
    Rational avg_sum(0);
    Rational eag_sum(0);
    for (const auto& score : scores.value()) {
        avg_sum += score.avg;
        eag_sum += score.eag;
    }
    const auto n = static_cast<long long>(scores.value().size());
    return ModelSummary{
        .total_avg_pct = round_pct(avg_sum / n),
        .avg_eag_pct = round_pct(eag_sum / n),
    };
}

} // namespace cotforge::metrics
