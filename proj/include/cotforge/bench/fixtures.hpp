#pragma once

#include <vector>

#include "cotforge/bench/outcomes.hpp"
#include "cotforge/bench/question.hpp"

namespace cotforge::bench {

/// The two bundled benchmark questions (ids "q5" and "q9"). q9 carries the
/// duplicate option text under letters C and E on purpose.
std::vector<Question> fixture_questions();

/// The bundled six-model, ten-question, five-trial correctness grids used
/// as the scoring oracle and by the fixtures subcommand.
OutcomeTable reference_grids();

} // namespace cotforge::bench
