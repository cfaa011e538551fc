#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cotforge/bench/fixtures.hpp"
#include "cotforge/metrics/metrics.hpp"
#include "cotforge/metrics/tables.hpp"

using namespace cotforge;
using metrics::Rational;

TEST_CASE("avg_at_k is the exact fraction of correct trials") {
    CHECK(metrics::avg_at_k({true, false, false, false, true}) == Rational(2, 5));
    CHECK(metrics::avg_at_k({false, false, false, false, false}) == Rational(0));
    CHECK(metrics::avg_at_k({true, true, true, true, true}) == Rational(1));
    CHECK(metrics::avg_at_k({true}) == Rational(1));
    CHECK_THROWS_AS(metrics::avg_at_k({}), std::invalid_argument);
}

TEST_CASE("eag_of matches the piecewise definition on the k=5 grid") {
    CHECK(metrics::eag_of(Rational(0)) == Rational(-1, 4));
    CHECK(metrics::eag_of(Rational(1, 5)) == Rational(1, 10));
    CHECK(metrics::eag_of(Rational(2, 5)) == Rational(3, 10));
    CHECK(metrics::eag_of(Rational(3, 5)) == Rational(9, 20));
    CHECK(metrics::eag_of(Rational(4, 5)) == Rational(6, 5));
    CHECK(metrics::eag_of(Rational(1)) == Rational(3, 2));
}

TEST_CASE("eag_of branch boundaries sit at exactly 1/3 and 2/3") {
    CHECK(metrics::eag_of(Rational(1, 3)) == Rational(1, 6));
    CHECK(metrics::eag_of(Rational(2, 3)) == Rational(1, 2));
    CHECK(metrics::eag_of(Rational(34, 100)) == Rational(34, 100) * Rational(3, 4));
    CHECK(metrics::eag_of(Rational(67, 100)) == Rational(67, 100) * Rational(3, 2));
}

TEST_CASE("eag_of rejects values outside [0,1]") {
    CHECK_THROWS_AS(metrics::eag_of(Rational(-1, 100)), std::domain_error);
    CHECK_THROWS_AS(metrics::eag_of(Rational(101, 100)), std::domain_error);
}

TEST_CASE("eag_of is strictly increasing and bounded over a dense sweep") {
    Rational prev = metrics::eag_of(Rational(0));
    for (int i = 1; i <= 300; ++i) {
        const Rational eag = metrics::eag_of(Rational(i, 300));
        CHECK(eag > prev);
        CHECK(eag >= Rational(-1, 4));
        CHECK(eag <= Rational(3, 2));
        prev = eag;
    }
}

TEST_CASE("round_pct rounds half away from zero") {
    CHECK(metrics::round_pct(Rational(385, 1000)) == 39);
    CHECK(metrics::round_pct(Rational(665, 1000)) == 67);
    CHECK(metrics::round_pct(Rational(135, 1000)) == 14);
    CHECK(metrics::round_pct(Rational(475, 1000)) == 48);
    CHECK(metrics::round_pct(Rational(32, 100)) == 32);
    CHECK(metrics::round_pct(Rational(0)) == 0);
    CHECK(metrics::round_pct(Rational(-1, 4)) == -25);
    CHECK(metrics::round_pct(Rational(-245, 1000)) == -25);
    CHECK(metrics::round_pct(Rational(-244, 1000)) == -24);
    CHECK(metrics::round_pct(Rational(3, 2)) == 150);
}

TEST_CASE("summarize reproduces the bundled reference totals") {
    const auto table = bench::reference_grids();
    REQUIRE(table.validate().ok());

    const struct {
        const char* model;
        long avg;
        long eag;
    } expected[] = {
        {"GPT-4o-2024-08-06", 20, 5},
        {"GPT-4o-2024-08-06 - CoT Enhanced", 36, 39},
        {"GPT-o1-preview-2024-09-12", 34, 32},
        {"Claude-3.5-Sonnet-2024-10-22", 52, 67},
        {"Claude-3-Opus-2024-02-29", 22, 14},
        {"Claude-3-Opus-2024-02-29 - CoT Enhanced", 42, 48},
    };
    for (const auto& e : expected) {
        auto summary = metrics::summarize(table, e.model);
        REQUIRE(summary.ok());
        CHECK(summary.value().total_avg_pct == e.avg);
        CHECK(summary.value().avg_eag_pct == e.eag);
    }
}

TEST_CASE("summarize of an all-zero grid is (0, -25)") {
    bench::OutcomeTable table;
    table.k = 5;
    table.models = {"m"};
    for (int q = 1; q <= 10; ++q) {
        const std::string id = "Question " + std::to_string(q);
        table.questions.push_back(id);
        table.cells["m"][id] = std::vector<bool>(5, false);
    }
    auto summary = metrics::summarize(table, "m");
    REQUIRE(summary.ok());
    CHECK(summary.value().total_avg_pct == 0);
    CHECK(summary.value().avg_eag_pct == -25);
}

TEST_CASE("summarize propagates missing cells") {
    bench::OutcomeTable table;
    table.k = 5;
    table.models = {"m"};
    table.questions = {"Question 1", "Question 2"};
    table.cells["m"]["Question 1"] = {true, false, true, false, true};
    auto summary = metrics::summarize(table, "m");
    REQUIRE(!summary.ok());
    CHECK(summary.error().kind == ErrorKind::missing_cell);
    CHECK(summary.error().message.find("Question 2") != std::string::npos);

    table.cells["m"]["Question 2"] = {true, false, true};
    summary = metrics::summarize(table, "m");
    REQUIRE(!summary.ok());
    CHECK(summary.error().kind == ErrorKind::missing_cell);
}

namespace {

std::string joined_cells(const metrics::ResultRow& row) {
    std::string out;
    for (const auto& cell : row.cells()) {
        if (!out.empty()) out += ' ';
        out += cell;
    }
    return out;
}

} // namespace

TEST_CASE("result rows render trial bits and rounded percents") {
    const auto table = bench::reference_grids();

    auto o1 = metrics::result_rows(table, "GPT-o1-preview-2024-09-12");
    REQUIRE(o1.ok());
    CHECK(joined_cells(o1.value()[8]) == "1 1 1 0 1 80% 120%");
    CHECK(joined_cells(o1.value()[0]) == "0 0 0 0 0 0% -25%");

    auto opus_cot = metrics::result_rows(table, "Claude-3-Opus-2024-02-29 - CoT Enhanced");
    REQUIRE(opus_cot.ok());
    CHECK(joined_cells(opus_cot.value()[7]) == "0 1 1 1 1 80% 120%");
}

TEST_CASE("results file carries the tabular layout with k-parameterized labels") {
    const auto table = bench::reference_grids();
    auto text = metrics::render_results_file(table, "GPT-4o-2024-08-06");
    REQUIRE(text.ok());

    const std::string& s = text.value();
    CHECK(s.rfind("GPT-4o-2024-08-06\n", 0) == 0);
    CHECK(s.find("\tTrial 1:\tTrial 2:\tTrial 3:\tTrial 4:\tTrial 5:\tAVG@5\tEAG@5\n") !=
          std::string::npos);
    CHECK(s.find("Question 3:\t1\t0\t0\t0\t1\t40%\t30%\n") != std::string::npos);
    CHECK(s.find("Question 8:\t1\t1\t1\t1\t1\t100%\t150%\n") != std::string::npos);
    CHECK(s.find("TOTAL AVG\tAVERAGE EAG\n20%\t5%\n") != std::string::npos);
}

TEST_CASE("metric labels follow the trial count") {
    CHECK(metrics::metric_avg_label(5) == "AVG@5");
    CHECK(metrics::metric_eag_label(5) == "EAG@5");
    CHECK(metrics::metric_avg_label(1) == "AVG@1");
    CHECK(metrics::metric_eag_label(1) == "EAG@1");

    bench::OutcomeTable table;
    table.k = 1;
    table.models = {"m"};
    table.questions = {"Question 1"};
    table.cells["m"]["Question 1"] = {true};
    auto text = metrics::render_results_file(table, "m");
    REQUIRE(text.ok());
    CHECK(text.value().find("AVG@1\tEAG@1") != std::string::npos);
    CHECK(text.value().find("Question 1:\t1\t100%\t150%\n") != std::string::npos);
}

TEST_CASE("summary file lists every model in table order") {
    const auto table = bench::reference_grids();
    auto text = metrics::render_summary_file(table);
    REQUIRE(text.ok());
    const std::string& s = text.value();
    CHECK(s.find("GPT-4o-2024-08-06\nTOTAL AVG\tAVERAGE EAG\n20%\t5%\n") != std::string::npos);
    CHECK(s.find("Claude-3.5-Sonnet-2024-10-22\nTOTAL AVG\tAVERAGE EAG\n52%\t67%\n") !=
          std::string::npos);
    CHECK(s.find("GPT-4o-2024-08-06 - CoT Enhanced\nTOTAL AVG\tAVERAGE EAG\n36%\t39%\n") !=
          std::string::npos);
}

TEST_CASE("outcome tables survive a JSON round trip") {
    const auto table = bench::reference_grids();
    const std::string text = bench::outcome_table_to_json_text(table);
    auto loaded = bench::outcome_table_from_json_text(text, "roundtrip");
    REQUIRE(loaded.ok());
    CHECK(loaded.value().k == table.k);
    CHECK(loaded.value().models == table.models);
    CHECK(loaded.value().questions == table.questions);
    CHECK(loaded.value().cells == table.cells);
}
