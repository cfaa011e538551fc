#include "cotforge/bench/outcomes.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cotforge::bench {

using nlohmann::json;

Result<std::vector<bool>> OutcomeTable::row(const std::string& model,
                                            const std::string& question) const {
    auto mit = cells.find(model);
    if (mit == cells.end())
        return make_error(ErrorKind::missing_cell, "no outcomes for model '" + model + "'");
    auto qit = mit->second.find(question);
    if (qit == mit->second.end())
        return make_error(ErrorKind::missing_cell,
                          "model '" + model + "' has no outcomes for '" + question + "'");
    if (static_cast<int>(qit->second.size()) != k)
        return make_error(ErrorKind::missing_cell,
                          "model '" + model + "' question '" + question + "' has " +
                              std::to_string(qit->second.size()) + " trials, expected " +
                              std::to_string(k));
    return qit->second;
}

Status OutcomeTable::validate() const {
    if (k < 1)
        return make_error(ErrorKind::invariant, "k must be >= 1");
    if (models.empty() || questions.empty())
        return make_error(ErrorKind::invariant, "table needs at least one model and one question");
    for (const auto& model : models) {
        for (const auto& question : questions) {
            auto r = row(model, question);
            if (!r.ok()) return r.error();
        }
    }
    return Status::success();
}

Result<OutcomeTable> outcome_table_from_json_text(const std::string& text,
                                                  const std::string& origin) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        return make_error(ErrorKind::schema, origin + ": not valid JSON");
    OutcomeTable table;
    try {
        table.k = j.at("k").get<int>();
        table.models = j.at("models").get<std::vector<std::string>>();
        table.questions = j.at("questions").get<std::vector<std::string>>();
        for (const auto& model : table.models) {
            const auto& rows = j.at("cells").at(model);
            for (const auto& question : table.questions) {
                const auto& bits = rows.at(question);
                std::vector<bool> outcomes;
                for (const auto& bit : bits) {
                    if (bit.is_boolean())
                        outcomes.push_back(bit.get<bool>());
                    else
                        outcomes.push_back(bit.get<int>() != 0);
                }
                table.cells[model][question] = std::move(outcomes);
            }
        }
    } catch (const json::exception& e) {
        return make_error(ErrorKind::schema, origin + ": " + e.what());
    }
    if (auto s = table.validate(); !s.ok())
        return make_error(ErrorKind::schema, origin + ": " + s.error().message);
    return table;
}

std::string outcome_table_to_json_text(const OutcomeTable& table) {
    json cells = json::object();
    for (const auto& model : table.models) {
        json rows = json::object();
        auto mit = table.cells.find(model);
        if (mit != table.cells.end()) {
            for (const auto& question : table.questions) {
                auto qit = mit->second.find(question);
                if (qit == mit->second.end()) continue;
                json bits = json::array();
                for (bool b : qit->second) bits.push_back(b ? 1 : 0);
                rows[question] = std::move(bits);
            }
        }
        cells[model] = std::move(rows);
    }
    json j{
        {"k", table.k},
        {"models", table.models},
        {"questions", table.questions},
        {"cells", std::move(cells)},
    };
    return j.dump(2) + "\n";
}

Result<OutcomeTable> load_outcome_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        return make_error(ErrorKind::io, "cannot open outcome table " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return outcome_table_from_json_text(buffer.str(), path.string());
}

Status save_outcome_table(const OutcomeTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        return make_error(ErrorKind::io, "cannot write outcome table " + path.string());
    out << outcome_table_to_json_text(table);
    out.flush();
    if (!out)
        return make_error(ErrorKind::io, "write failed for " + path.string());
    return Status::success();
}

} // namespace cotforge::bench
