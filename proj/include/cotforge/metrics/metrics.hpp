#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "cotforge/bench/outcomes.hpp"
#include "cotforge/result.hpp"

namespace cotforge::metrics {

/// All scoring runs on exact rationals; rounding happens once, at
/// presentation time.
using Rational = boost::rational<long long>;

/// Fraction of correct trials. Throws std::invalid_argument on an empty list.
Rational avg_at_k(const std::vector<bool>& outcomes);

/// Extreme-averaging reweighting of an AVG value:
///   avg = 0          -> -1/4
///   0 < avg <= 1/3   -> avg / 2
///   1/3 < avg <= 2/3 -> 3 * avg / 4
///   avg > 2/3        -> 3 * avg / 2
/// Throws std::domain_error when avg is outside [0, 1].
Rational eag_of(const Rational& avg);

/// round(100 * x) with ties away from zero.
long round_pct(const Rational& x);

struct QuestionScore {
    Rational avg;
    Rational eag;
};

struct ModelSummary {
    long total_avg_pct = 0;
    long avg_eag_pct = 0;
};

/// Per-question scores for one model, in the table's question order.
Result<std::vector<QuestionScore>> question_scores(const bench::OutcomeTable& table,
                                                   const std::string& model);

/// Rounded percent pair (mean AVG, mean EAG) over all questions. Means are
/// taken on the unrounded rationals.
Result<ModelSummary> summarize(const bench::OutcomeTable& table, const std::string& model);

} // namespace cotforge::metrics
