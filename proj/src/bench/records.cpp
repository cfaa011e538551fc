#include "cotforge/bench/records.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cotforge::bench {

Status TrialRecord::validate() const {
    if (model_label.empty()) {
        return Status(make_error(ErrorKind::schema, "trial record: model_label is empty"));
    }
    if (question_id.empty()) {
        return Status(make_error(ErrorKind::schema, "trial record: question_id is empty"));
    }
    if (trial < 1) {
        return Status(make_error(ErrorKind::schema, "trial record: trial must be 1-based"));
    }
    if (unparsed && chosen.has_value()) {
        return Status(make_error(ErrorKind::invariant,
                                 "trial record: unparsed trials carry no chosen letter"));
    }
    if (unparsed && correct) {
        return Status(make_error(ErrorKind::invariant,
                                 "trial record: unparsed trials cannot be correct"));
    }
    if (correct && !chosen.has_value()) {
        return Status(make_error(ErrorKind::invariant,
                                 "trial record: correct requires a chosen letter"));
    }
    return Status::success();
}

std::string trial_record_to_json_text(const TrialRecord& record) {
    nlohmann::json doc{
        {"model_id", record.model_id},
        {"model_label", record.model_label},
        {"question_id", record.question_id},
        {"trial", record.trial},
        {"correct", record.correct},
        {"unparsed", record.unparsed},
        {"restarts_used", record.restarts_used},
        {"calls_used", record.calls_used},
        {"usage",
         {{"prompt_tokens", record.usage.prompt_tokens},
          {"completion_tokens", record.usage.completion_tokens},
          {"calls", record.usage.calls}}},
        {"transcript_path", record.transcript_path},
    };
    if (record.chosen.has_value()) {
        doc["chosen"] = std::string(1, *record.chosen);
    } else {
        doc["chosen"] = nullptr;
    }
    return doc.dump();
}

Result<TrialRecord> trial_record_from_json_text(const std::string& text,
                                                const std::string& origin) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        return make_error(ErrorKind::schema, origin + ": trial record is not a JSON object");
    }
    TrialRecord record;
    try {
        record.model_id = doc.at("model_id").get<std::string>();
        record.model_label = doc.at("model_label").get<std::string>();
        record.question_id = doc.at("question_id").get<std::string>();
        record.trial = doc.at("trial").get<int>();
        if (!doc.at("chosen").is_null()) {
            auto chosen = doc.at("chosen").get<std::string>();
            if (chosen.size() != 1) {
                return make_error(ErrorKind::schema,
                                  origin + ": chosen must be a single letter");
            }
            record.chosen = chosen[0];
        }
        record.correct = doc.at("correct").get<bool>();
        record.unparsed = doc.at("unparsed").get<bool>();
        record.restarts_used = doc.at("restarts_used").get<int>();
        record.calls_used = doc.at("calls_used").get<int>();
        const auto& usage = doc.at("usage");
        record.usage.prompt_tokens = usage.at("prompt_tokens").get<long>();
        record.usage.completion_tokens = usage.at("completion_tokens").get<long>();
        record.usage.calls = usage.at("calls").get<int>();
        record.transcript_path = doc.at("transcript_path").get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
        return make_error(ErrorKind::schema,
                          origin + ": trial record field error: " + ex.what());
    }
    if (auto status = record.validate(); !status.ok()) {
        return Error(status.error());
    }
    return record;
}

Status save_trial_record(const TrialRecord& record, const std::filesystem::path& path) {
    std::error_code ec;
    if (!path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            return Status(make_error(ErrorKind::io, "cannot create record directory '" +
                                                        path.parent_path().string() +
                                                        "': " + ec.message()));
        }
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out.is_open()) {
            return Status(
                make_error(ErrorKind::io, "cannot open '" + tmp.string() + "' for writing"));
        }
        out << trial_record_to_json_text(record) << "\n";
        out.flush();
        if (!out.good()) {
            return Status(make_error(ErrorKind::io, "write failed for '" + tmp.string() + "'"));
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        return Status(make_error(ErrorKind::io, "cannot move record into place at '" +
                                                    path.string() + "': " + ec.message()));
    }
    return Status::success();
}

Result<TrialRecord> load_trial_record(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        return make_error(ErrorKind::io, "cannot open trial record '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.pop_back();
    }
    return trial_record_from_json_text(text, path.string());
}

Status save_records_jsonl(const std::vector<TrialRecord>& records,
                          const std::filesystem::path& path) {
    std::error_code ec;
    if (!path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            return Status(make_error(ErrorKind::io, "cannot create directory for '" +
                                                        path.string() + "': " + ec.message()));
        }
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out.is_open()) {
        return Status(
            make_error(ErrorKind::io, "cannot open '" + path.string() + "' for writing"));
    }
    for (const auto& record : records) {
        out << trial_record_to_json_text(record) << "\n";
    }
    out.flush();
    if (!out.good()) {
        return Status(make_error(ErrorKind::io, "write failed for '" + path.string() + "'"));
    }
    return Status::success();
}

Result<std::vector<TrialRecord>> load_records_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        return make_error(ErrorKind::io, "cannot open records file '" + path.string() + "'");
    }
    std::vector<TrialRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto record = trial_record_from_json_text(
            line, path.string() + " line " + std::to_string(line_no));
        if (!record.ok()) {
            return record.error();
        }
        records.push_back(record.take());
    }
    return records;
}

Result<OutcomeTable> outcomes_from_records(const std::vector<TrialRecord>& records,
                                           const std::vector<std::string>& model_labels,
                                           const std::vector<std::string>& question_ids,
                                           int k) {
    OutcomeTable table;
    table.k = k;
    table.models = model_labels;
    table.questions = question_ids;

    std::map<std::string, std::map<std::string, std::vector<int>>> seen;
    for (const auto& label : model_labels) {
        for (const auto& question : question_ids) {
            table.cells[label][question] = std::vector<bool>(static_cast<size_t>(k), false);
            seen[label][question] = std::vector<int>(static_cast<size_t>(k), 0);
        }
    }

    for (const auto& record : records) {
        auto model_it = table.cells.find(record.model_label);
        if (model_it == table.cells.end()) {
            continue; // records for models outside this scoring request
        }
        auto question_it = model_it->second.find(record.question_id);
        if (question_it == model_it->second.end()) {
            continue;
        }
        if (record.trial < 1 || record.trial > k) {
            return make_error(ErrorKind::schema,
                              "trial " + std::to_string(record.trial) + " for model '" +
                                  record.model_label + "' question '" + record.question_id +
                                  "' is outside 1.." + std::to_string(k));
        }
        int& count = seen[record.model_label][record.question_id][record.trial - 1];
        if (count != 0) {
            return make_error(ErrorKind::schema,
                              "duplicate record for model '" + record.model_label +
                                  "' question '" + record.question_id + "' trial " +
                                  std::to_string(record.trial));
        }
        count = 1;
        question_it->second[record.trial - 1] = record.correct;
    }

    for (const auto& label : model_labels) {
        for (const auto& question : question_ids) {
            const auto& counts = seen[label][question];
            for (int trial = 1; trial <= k; ++trial) {
                if (counts[trial - 1] == 0) {
                    return make_error(ErrorKind::missing_cell,
                                      "no record for model '" + label + "' question '" +
                                          question + "' trial " + std::to_string(trial));
                }
            }
        }
    }
    return table;
}

} // namespace cotforge::bench
