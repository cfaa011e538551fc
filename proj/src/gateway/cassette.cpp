#include "cotforge/gateway/cassette.hpp"

#include <utility>

#include "cotforge/gateway/fingerprint.hpp"

namespace cotforge::gateway {

using nlohmann::json;

json request_to_json(const ModelRequest& request) {
    json messages = json::array();
    for (const auto& message : request.messages) {
        messages.push_back({{"role", to_string(message.role)}, {"content", message.content}});
    }
    return json{
        {"model_id", request.model_id},
        {"messages", std::move(messages)},
        {"params",
         {{"temperature", request.params.temperature},
          {"presence_penalty", request.params.presence_penalty},
          {"top_p", request.params.top_p},
          {"max_output_tokens", request.params.max_output_tokens}}},
    };
}

Result<ModelRequest> request_from_json(const json& j) {
    if (!j.is_object() || !j.contains("model_id") || !j.contains("messages") || !j.contains("params"))
        return make_error(ErrorKind::cassette_corrupt, "request object missing required fields");
    ModelRequest request;
    try {
        request.model_id = j.at("model_id").get<std::string>();
        for (const auto& m : j.at("messages")) {
            auto role = role_from_string(m.at("role").get<std::string>());
            if (!role.ok())
                return make_error(ErrorKind::cassette_corrupt, role.error().message);
            request.messages.push_back(
                ChatMessage{.role = role.value(), .content = m.at("content").get<std::string>()});
        }
        const auto& p = j.at("params");
        request.params.temperature = p.at("temperature").get<double>();
        request.params.presence_penalty = p.at("presence_penalty").get<double>();
        request.params.top_p = p.at("top_p").get<double>();
        request.params.max_output_tokens = p.at("max_output_tokens").get<int>();
    } catch (const json::exception& e) {
        return make_error(ErrorKind::cassette_corrupt, std::string("bad request object: ") + e.what());
    }
    if (auto s = request.validate(); !s.ok())
        return make_error(ErrorKind::cassette_corrupt, "request violates invariants: " + s.error().message);
    return request;
}

json response_to_json(const ModelResponse& response) {
    return json{
        {"text", response.text},
        {"prompt_tokens", response.prompt_tokens},
        {"completion_tokens", response.completion_tokens},
        {"latency_ms", response.latency_ms},
    };
}

Result<ModelResponse> response_from_json(const json& j) {
    if (!j.is_object() || !j.contains("text"))
        return make_error(ErrorKind::cassette_corrupt, "response object missing text");
    ModelResponse response;
    try {
        response.text = j.at("text").get<std::string>();
        response.prompt_tokens = j.value("prompt_tokens", 0L);
        response.completion_tokens = j.value("completion_tokens", 0L);
        response.latency_ms = j.value("latency_ms", 0L);
    } catch (const json::exception& e) {
        return make_error(ErrorKind::cassette_corrupt, std::string("bad response object: ") + e.what());
    }
    if (response.prompt_tokens < 0 || response.completion_tokens < 0 || response.latency_ms < 0)
        return make_error(ErrorKind::cassette_corrupt, "response counters must be nonnegative");
    return response;
}

json cassette_entry_to_json(const CassetteEntry& entry) {
    return json{
        {"fingerprint", entry.fingerprint},
        {"request", request_to_json(entry.request)},
        {"response", response_to_json(entry.response)},
    };
}

Result<CassetteEntry> cassette_entry_from_json(const json& j) {
    if (!j.is_object() || !j.contains("fingerprint") || !j.contains("request") || !j.contains("response"))
        return make_error(ErrorKind::cassette_corrupt, "entry missing fingerprint/request/response");
    CassetteEntry entry;
    try {
        entry.fingerprint = j.at("fingerprint").get<std::string>();
    } catch (const json::exception& e) {
        return make_error(ErrorKind::cassette_corrupt, std::string("bad fingerprint: ") + e.what());
    }
    auto request = request_from_json(j.at("request"));
    if (!request.ok()) return request.error();
    auto response = response_from_json(j.at("response"));
    if (!response.ok()) return response.error();
    entry.request = request.take();
    entry.response = response.take();
    return entry;
}

Result<std::vector<CassetteEntry>> read_cassette(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        return make_error(ErrorKind::io, "cannot open cassette " + path.string());
    std::vector<CassetteEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            return make_error(ErrorKind::cassette_corrupt,
                              path.string() + " line " + std::to_string(line_no) + ": not valid JSON");
        auto entry = cassette_entry_from_json(j);
        if (!entry.ok())
            return make_error(ErrorKind::cassette_corrupt,
                              path.string() + " line " + std::to_string(line_no) + ": " +
                                  entry.error().message);
        entries.push_back(entry.take());
    }
    return entries;
}

Result<std::shared_ptr<RecordingBackend>>
RecordingBackend::open(std::shared_ptr<ModelBackend> inner, const std::filesystem::path& cassette_path) {
    std::error_code ec;
    std::filesystem::create_directories(cassette_path.parent_path(), ec);
    std::ofstream out(cassette_path, std::ios::app);
    if (!out)
        return make_error(ErrorKind::io, "cannot open cassette for append: " + cassette_path.string());
    return std::shared_ptr<RecordingBackend>(
        new RecordingBackend(std::move(inner), std::move(out)));
}

RecordingBackend::RecordingBackend(std::shared_ptr<ModelBackend> inner, std::ofstream out)
    : inner_(std::move(inner)), out_(std::move(out)) {}

Result<ModelResponse> RecordingBackend::complete(const ModelRequest& request) {
    auto result = inner_->complete(request);
    if (!result.ok()) return result;
    CassetteEntry entry{
        .fingerprint = request_fingerprint(request),
        .request = request,
        .response = result.value(),
    };
    {
        std::lock_guard lock(mutex_);
        out_ << cassette_entry_to_json(entry).dump() << '\n';
        out_.flush();
        if (!out_)
            return make_error(ErrorKind::io, "cassette write failed");
    }
    return result;
}

Result<std::shared_ptr<ReplayBackend>> ReplayBackend::open(const std::filesystem::path& cassette_path) {
    auto entries = read_cassette(cassette_path);
    if (!entries.ok()) return entries.error();
    return std::make_shared<ReplayBackend>(entries.take());
}

ReplayBackend::ReplayBackend(std::vector<CassetteEntry> entries) {
    for (auto& entry : entries)
        by_fingerprint_[entry.fingerprint].push_back(std::move(entry.response));
}

Result<ModelResponse> ReplayBackend::complete(const ModelRequest& request) {
    const std::string fp = request_fingerprint(request);
    std::lock_guard lock(mutex_);
    auto it = by_fingerprint_.find(fp);
    if (it == by_fingerprint_.end())
        return make_error(ErrorKind::malformed_reply, "replay miss: fingerprint " + fp);
    std::size_t& next = next_index_[fp];
    if (next >= it->second.size())
        return make_error(ErrorKind::malformed_reply,
                          "replay miss: entries exhausted for fingerprint " + fp);
    return it->second[next++];
}

std::size_t ReplayBackend::remaining() const {
    std::lock_guard lock(mutex_);
    std::size_t total = 0;
    for (const auto& [fp, responses] : by_fingerprint_) {
        auto it = next_index_.find(fp);
        std::size_t used = it == next_index_.end() ? 0 : it->second;
        total += responses.size() - used;
    }
    return total;
}

} // namespace cotforge::gateway
