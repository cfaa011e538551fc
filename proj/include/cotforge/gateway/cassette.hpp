#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cotforge/gateway/backend.hpp"
#include "cotforge/gateway/types.hpp"

namespace cotforge::gateway {

/// One recorded exchange: the request snapshot, its fingerprint, and the
/// response that was served.
struct CassetteEntry {
    std::string fingerprint;
    ModelRequest request;
    ModelResponse response;
};

nlohmann::json request_to_json(const ModelRequest& request);
Result<ModelRequest> request_from_json(const nlohmann::json& j);
nlohmann::json response_to_json(const ModelResponse& response);
Result<ModelResponse> response_from_json(const nlohmann::json& j);

nlohmann::json cassette_entry_to_json(const CassetteEntry& entry);
Result<CassetteEntry> cassette_entry_from_json(const nlohmann::json& j);

/// Parses a line-delimited cassette file. Any unreadable line is a
/// cassette_corrupt error naming the line number.
Result<std::vector<CassetteEntry>> read_cassette(const std::filesystem::path& path);

/// Wraps a live backend and appends every exchange to a cassette file.
/// Writes are serialized and flushed per entry so a crashed run keeps
/// everything that completed.
class RecordingBackend : public ModelBackend {
public:
    static Result<std::shared_ptr<RecordingBackend>>
    open(std::shared_ptr<ModelBackend> inner, const std::filesystem::path& cassette_path);

    Result<ModelResponse> complete(const ModelRequest& request) override;

private:
    RecordingBackend(std::shared_ptr<ModelBackend> inner, std::ofstream out);

    std::shared_ptr<ModelBackend> inner_;
    std::mutex mutex_;
    std::ofstream out_;
};

/// Serves responses from a loaded cassette, keyed by request fingerprint.
/// Entries sharing a fingerprint (the same request issued repeatedly) are
/// replayed in recorded order. A request with no remaining entry is a hard
/// malformed_reply error; replay never falls through to the network.
class ReplayBackend : public ModelBackend {
public:
    static Result<std::shared_ptr<ReplayBackend>> open(const std::filesystem::path& cassette_path);
    explicit ReplayBackend(std::vector<CassetteEntry> entries);

    Result<ModelResponse> complete(const ModelRequest& request) override;

    std::size_t remaining() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::vector<ModelResponse>> by_fingerprint_;
    std::map<std::string, std::size_t> next_index_;
};

} // namespace cotforge::gateway
