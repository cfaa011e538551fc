#include "cotforge/bench/question.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cotforge::bench {

using nlohmann::json;

std::optional<std::string> Question::option_text(char letter) const {
    for (const auto& [l, text] : options)
        if (l == letter) return text;
    return std::nullopt;
}

bool Question::has_option(char letter) const {
    return option_text(letter).has_value();
}

Status Question::validate() const {
    if (id.empty())
        return make_error(ErrorKind::schema, "question id must be non-empty");
    if (text.empty())
        return make_error(ErrorKind::schema, "question text must be non-empty");
    if (options.size() < 2)
        return make_error(ErrorKind::schema, "question needs at least two options");
    std::set<char> seen;
    for (const auto& [letter, option] : options) {
        if (letter < 'A' || letter > 'Z')
            return make_error(ErrorKind::schema,
                              std::string("option letter '") + letter + "' is not A-Z");
        if (!seen.insert(letter).second)
            return make_error(ErrorKind::schema,
                              std::string("duplicate option letter '") + letter + "'");
        if (option.empty())
            return make_error(ErrorKind::schema,
                              std::string("option ") + letter + " text must be non-empty");
    }
    if (!seen.count(answer))
        return make_error(ErrorKind::schema,
                          std::string("answer '") + answer + "' is not an option letter");
    return Status::success();
}

namespace {

Error at_line(const std::string& origin, std::size_t line_no, const std::string& what) {
    return make_error(ErrorKind::schema,
                      origin + " line " + std::to_string(line_no) + ": " + what);
}

Result<Question> question_from_json(const json& j, const std::string& origin, std::size_t line_no) {
    if (!j.is_object())
        return at_line(origin, line_no, "record is not an object");
    for (const char* field : {"id", "question", "options", "answer"}) {
        if (!j.contains(field))
            return at_line(origin, line_no, std::string("missing field '") + field + "'");
    }
    Question q;
    try {
        q.id = j.at("id").get<std::string>();
        q.text = j.at("question").get<std::string>();
        const auto& options = j.at("options");
        if (!options.is_object())
            return at_line(origin, line_no, "field 'options' is not an object");
        for (const auto& [letter, text] : options.items()) {
            if (letter.size() != 1)
                return at_line(origin, line_no, "option key '" + letter + "' is not a single letter");
            q.options.emplace_back(letter[0], text.get<std::string>());
        }
        const std::string answer = j.at("answer").get<std::string>();
        if (answer.size() != 1)
            return at_line(origin, line_no, "field 'answer' is not a single letter");
        q.answer = answer[0];
    } catch (const json::exception& e) {
        return at_line(origin, line_no, e.what());
    }
    if (auto s = q.validate(); !s.ok())
        return at_line(origin, line_no, s.error().message);
    return q;
}

} // namespace

Result<std::vector<Question>> parse_dataset(const std::string& content, const std::string& origin) {
    std::vector<Question> questions;
    std::set<std::string> ids;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            return at_line(origin, line_no, "not valid JSON");
        auto q = question_from_json(j, origin, line_no);
        if (!q.ok()) return q.error();
        if (!ids.insert(q.value().id).second)
            return at_line(origin, line_no, "duplicate question id '" + q.value().id + "'");
        questions.push_back(q.take());
    }
    if (questions.empty())
        return make_error(ErrorKind::schema, origin + ": no questions found");
    return questions;
}

Result<std::vector<Question>> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        return make_error(ErrorKind::io, "cannot open dataset " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), path.string());
}

} // namespace cotforge::bench
