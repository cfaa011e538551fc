#pragma once

#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cotforge/result.hpp"

namespace cotforge::engine {

/// One model exchange (or parse outcome) recorded for audit and replay
/// debugging.  Events are ordered; the sequence doubles as the ground truth
/// for scenario assertions.
struct TranscriptEvent {
    /// step | reask_step | revision | feedback | reask_feedback |
    /// consistency | final | reask_final
    std::string phase;
    std::string fingerprint;
    std::string response_text;
    /// Parsed verdict when the phase produces one (VALID / ISSUES /
    /// RESTART / FINALIZE / answer letter).
    std::optional<std::string> verdict;
    /// Free-form structured annotation (e.g. serialized finding or scores).
    std::optional<std::string> note;
    long long ts_ms = 0;
};

std::string transcript_event_to_json_text(const TranscriptEvent& event);
Result<TranscriptEvent> transcript_event_from_json_text(const std::string& text);

class TranscriptSink {
public:
    virtual ~TranscriptSink() = default;
    virtual void append(const TranscriptEvent& event) = 0;
};

/// Keeps events in memory; the workhorse for tests.
class MemoryTranscript : public TranscriptSink {
public:
    void append(const TranscriptEvent& event) override;
    const std::vector<TranscriptEvent>& events() const { return events_; }
    std::vector<std::string> phases() const;

private:
    std::vector<TranscriptEvent> events_;
};

/// Appends one JSON line per event to a file, flushing as it goes.
class FileTranscript : public TranscriptSink {
public:
    static Result<std::unique_ptr<FileTranscript>> open(const std::string& path);
    void append(const TranscriptEvent& event) override;

private:
    explicit FileTranscript(std::ofstream out) : out_(std::move(out)) {}
    std::ofstream out_;
    std::mutex mutex_;
};

class NullTranscript : public TranscriptSink {
public:
    void append(const TranscriptEvent&) override {}
};

/// Milliseconds since the Unix epoch; transcripts carry wall-clock stamps
/// even though replayed score artifacts must not.
long long now_ms();

} // namespace cotforge::engine
