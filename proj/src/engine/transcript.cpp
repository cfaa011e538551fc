#include "cotforge/engine/transcript.hpp"

#include <chrono>
#include <filesystem>

#include <nlohmann/json.hpp>

namespace cotforge::engine {

std::string transcript_event_to_json_text(const TranscriptEvent& event) {
    nlohmann::json doc{
        {"phase", event.phase},
        {"fingerprint", event.fingerprint},
        {"response_text", event.response_text},
        {"ts_ms", event.ts_ms},
    };
    if (event.verdict.has_value()) {
        doc["verdict"] = *event.verdict;
    }
    if (event.note.has_value()) {
        doc["note"] = *event.note;
    }
    return doc.dump();
}

Result<TranscriptEvent> transcript_event_from_json_text(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        return make_error(ErrorKind::schema, "transcript event is not a JSON object");
    }
    TranscriptEvent event;
    try {
        event.phase = doc.at("phase").get<std::string>();
        event.fingerprint = doc.at("fingerprint").get<std::string>();
        event.response_text = doc.at("response_text").get<std::string>();
        event.ts_ms = doc.at("ts_ms").get<long long>();
        if (doc.contains("verdict")) {
            event.verdict = doc.at("verdict").get<std::string>();
        }
        if (doc.contains("note")) {
            event.note = doc.at("note").get<std::string>();
        }
    } catch (const nlohmann::json::exception& ex) {
        return make_error(ErrorKind::schema,
                          std::string("transcript event field error: ") + ex.what());
    }
    return event;
}

void MemoryTranscript::append(const TranscriptEvent& event) {
    events_.push_back(event);
}

std::vector<std::string> MemoryTranscript::phases() const {
    std::vector<std::string> out;
    out.reserve(events_.size());
    for (const auto& event : events_) {
        out.push_back(event.phase);
    }
    return out;
}

Result<std::unique_ptr<FileTranscript>> FileTranscript::open(const std::string& path) {
    std::error_code ec;
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent, ec);
        if (ec) {
            return make_error(ErrorKind::io,
                              "cannot create transcript directory '" + parent.string() +
                                  "': " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::app);
    if (!out.is_open()) {
        return make_error(ErrorKind::io, "cannot open transcript file '" + path + "'");
    }
    return std::unique_ptr<FileTranscript>(new FileTranscript(std::move(out)));
}

void FileTranscript::append(const TranscriptEvent& event) {
    std::lock_guard<std::mutex> lock(mutex_);
    out_ << transcript_event_to_json_text(event) << "\n";
    out_.flush();
}

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

} // namespace cotforge::engine
