#include "cotforge/bench/fixtures.hpp"

#include <cassert>

namespace cotforge::bench {

std::vector<Question> fixture_questions() {
    Question q5{
        .id = "q5",
        .text = "Peter needs CPR from his best friend Paul, the only person around. However, "
                "Paul's last text exchange with Peter was about the verbal attack Paul made on "
                "Peter as a child over his overly-expensive Pokémon collection, and Paul "
                "stores all his texts in the cloud, permanently. Paul will [_] help Peter.",
        .options = {{'A', "Probably not"},
                    {'B', "Definitely"},
                    {'C', "Half-heartedly"},
                    {'D', "Not"},
                    {'E', "Pretend to"},
                    {'F', "Ponder deeply over whether to"}},
        .answer = 'B',
    };
    Question q9{
        .id = "q9",
        .text = "Agatha makes a stack of 5 cold, fresh single-slice ham sandwiches (with no "
                "sauces or condiments) in Room A, then immediately uses duct tape to stick the "
                "top surface of the uppermost sandwich to the bottom of her walking stick. She "
                "then walks to Room B, with her walking stick, so how many whole sandwiches are "
                "there now, in each room?",
        .options = {{'A', "4 whole sandwiches in Room A, 0 whole sandwiches in Room B"},
                    {'B', "No sandwiches anywhere"},
                    {'C', "4 whole sandwiches in Room B, 1 whole sandwich in Room A"},
                    {'D', "All 5 whole sandwiches in Room B"},
                    {'E', "4 whole sandwiches in Room B, 1 whole sandwich in Room A"},
                    {'F', "All 5 whole sandwiches in Room A"}},
        .answer = 'A',
    };
    return {q5, q9};
}

namespace {

std::vector<bool> bits(const char* pattern) {
    std::vector<bool> out;
    for (const char* c = pattern; *c; ++c) out.push_back(*c == '1');
    assert(out.size() == 5);
    return out;
}

} // namespace

OutcomeTable reference_grids() {
    OutcomeTable table;
    table.k = 5;
    table.models = {
        "GPT-4o-2024-08-06",
        "GPT-4o-2024-08-06 - CoT Enhanced",
        "GPT-o1-preview-2024-09-12",
        "Claude-3.5-Sonnet-2024-10-22",
        "Claude-3-Opus-2024-02-29",
        "Claude-3-Opus-2024-02-29 - CoT Enhanced",
    };
    for (int q = 1; q <= 10; ++q)
        table.questions.push_back("Question " + std::to_string(q));

    const char* grids[6][10] = {
        {"00000", "00000", "10001", "00000", "11100", "00000", "00000", "11111", "00000",
         "00000"},
        {"11011", "00000", "11011", "00000", "11110", "00000", "00000", "11101", "00101",
         "00000"},
        {"00000", "00000", "00000", "10000", "11111", "01101", "00000", "11101", "11101",
         "00000"},
        {"11111", "11111", "00100", "00000", "01111", "00000", "11111", "11111", "10000",
         "00000"},
        {"10000", "00000", "00000", "00000", "11111", "00000", "00000", "11111", "00000",
         "00000"},
        {"11111", "00000", "10100", "00000", "11111", "00000", "11111", "01111", "00000",
         "00000"},
    };
    for (std::size_t m = 0; m < table.models.size(); ++m)
        for (std::size_t q = 0; q < table.questions.size(); ++q)
            table.cells[table.models[m]][table.questions[q]] = bits(grids[m][q]);
    return table;
}

} // namespace cotforge::bench
