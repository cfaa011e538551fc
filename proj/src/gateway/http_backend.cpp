#include "cotforge/gateway/http_backend.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace cotforge::gateway {

using nlohmann::json;

const char* to_string(Dialect dialect) {
    switch (dialect) {
    case Dialect::completions: return "completions";
    case Dialect::anthropic: return "anthropic";
    }
    return "unknown";
}

Result<Dialect> dialect_from_string(const std::string& name) {
    if (name == "completions") return Dialect::completions;
    if (name == "anthropic") return Dialect::anthropic;
    return make_error(ErrorKind::config, "unknown dialect '" + name + "'");
}

namespace {

void log_line(const HttpOptions& options, const std::string& message) {
    if (options.log)
        options.log(message);
    else
        std::cerr << "cotforge: " << message << '\n';
}

std::optional<long> parse_retry_after(const httplib::Response& res) {
    if (!res.has_header("Retry-After")) return std::nullopt;
    try {
        return std::stol(res.get_header_value("Retry-After")) * 1000;
    } catch (...) {
        return std::nullopt;
    }
}

Result<ModelResponse> parse_completions_body(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded())
        return make_error(ErrorKind::malformed_reply, "response body is not JSON");
    ModelResponse out;
    try {
        out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        return make_error(ErrorKind::malformed_reply, "missing choices[0].message.content");
    }
    if (j.contains("usage") && j["usage"].is_object()) {
        out.prompt_tokens = j["usage"].value("prompt_tokens", 0L);
        out.completion_tokens = j["usage"].value("completion_tokens", 0L);
    }
    return out;
}

Result<ModelResponse> parse_anthropic_body(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded())
        return make_error(ErrorKind::malformed_reply, "response body is not JSON");
    ModelResponse out;
    try {
        std::string text;
        for (const auto& block : j.at("content")) {
            if (block.value("type", "") == "text")
                text += block.at("text").get<std::string>();
        }
        out.text = std::move(text);
    } catch (const json::exception&) {
        return make_error(ErrorKind::malformed_reply, "missing content[].text");
    }
    if (out.text.empty())
        return make_error(ErrorKind::malformed_reply, "no text blocks in reply");
    if (j.contains("usage") && j["usage"].is_object()) {
        out.prompt_tokens = j["usage"].value("input_tokens", 0L);
        out.completion_tokens = j["usage"].value("output_tokens", 0L);
    }
    return out;
}

} // namespace

HttpChatBackend::HttpChatBackend(Dialect dialect, std::string base_url, std::string api_key,
                                 HttpOptions options)
    : dialect_(dialect),
      base_url_(std::move(base_url)),
      api_key_(std::move(api_key)),
      options_(std::move(options)) {}

std::string HttpChatBackend::render_body(const ModelRequest& request) const {
    if (dialect_ == Dialect::completions) {
        json messages = json::array();
        for (const auto& m : request.messages)
            messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
        json body{
            {"model", request.model_id},
            {"messages", std::move(messages)},
            {"temperature", request.params.temperature},
            {"presence_penalty", request.params.presence_penalty},
            {"top_p", request.params.top_p},
            {"max_tokens", request.params.max_output_tokens},
        };
        return body.dump();
    }

    json body{
        {"model", request.model_id},
        {"temperature", request.params.temperature},
        {"top_p", request.params.top_p},
        {"max_tokens", request.params.max_output_tokens},
    };
    if (request.params.presence_penalty != 0.0)
        log_line(options_, "dropping presence_penalty=" +
                               std::to_string(request.params.presence_penalty) +
                               " for anthropic dialect");
    json messages = json::array();
    for (std::size_t i = 0; i < request.messages.size(); ++i) {
        const auto& m = request.messages[i];
        if (i == 0 && m.role == Role::system) {
            body["system"] = m.content;
            continue;
        }
        messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
    }
    body["messages"] = std::move(messages);
    return body.dump();
}

Result<ModelResponse> HttpChatBackend::complete(const ModelRequest& request) {
    if (auto s = request.validate(); !s.ok()) return s.error();

    httplib::Client client(base_url_);
    client.set_connection_timeout(options_.connect_timeout_s, 0);
    client.set_read_timeout(options_.read_timeout_s, 0);

    httplib::Headers headers;
    const char* path = nullptr;
    if (dialect_ == Dialect::completions) {
        headers.emplace("Authorization", "Bearer " + api_key_);
        path = "/v1/chat/completions";
    } else {
        headers.emplace("x-api-key", api_key_);
        headers.emplace("anthropic-version", "2023-06-01");
        path = "/v1/messages";
    }

    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(path, headers, render_body(request), "application/json");
    const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();

    if (!res)
        return make_error(ErrorKind::transport,
                          std::string("request failed: ") + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403)
        return make_error(ErrorKind::auth, "authentication rejected (status " +
                                               std::to_string(res->status) + ")");
    if (res->status == 429) {
        Error err = make_error(ErrorKind::rate_limited, "rate limited");
        err.retry_after_ms = parse_retry_after(*res);
        return err;
    }
    if (res->status >= 500)
        return make_error(ErrorKind::transport,
                          "server error (status " + std::to_string(res->status) + ")");
    if (res->status < 200 || res->status >= 300)
        return make_error(ErrorKind::malformed_reply, "unexpected status " +
                                                          std::to_string(res->status) + ": " +
                                                          res->body.substr(0, 200));

    auto parsed = dialect_ == Dialect::completions ? parse_completions_body(res->body)
                                                   : parse_anthropic_body(res->body);
    if (!parsed.ok()) return parsed;
    ModelResponse out = parsed.take();
    out.latency_ms = elapsed_ms;
    return out;
}

Result<std::shared_ptr<ModelBackend>> make_live_backend(Dialect dialect, HttpOptions options) {
    const char* key_var =
        dialect == Dialect::completions ? "COTFORGE_OPENAI_KEY" : "COTFORGE_ANTHROPIC_KEY";
    const char* key = std::getenv(key_var);
    if (!key || !*key)
        return make_error(ErrorKind::config,
                          std::string("missing API key env var ") + key_var);

    std::string base_url = dialect == Dialect::completions ? "https://api.openai.com"
                                                           : "https://api.anthropic.com";
    std::string url_var = "COTFORGE_BASE_URL_";
    for (const char* c = to_string(dialect); *c; ++c)
        url_var.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*c))));
    if (const char* override_url = std::getenv(url_var.c_str()); override_url && *override_url)
        base_url = override_url;

    auto http = std::make_shared<HttpChatBackend>(dialect, base_url, key, std::move(options));
    return std::shared_ptr<ModelBackend>(
        std::make_shared<RetryBackend>(std::move(http), RetryPolicy{}));
}

} // namespace cotforge::gateway
