#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cotforge::engine {

/// FIFO queue of restart directives with dedup across everything ever
/// enqueued.  Dedup compares lowercased, whitespace-collapsed text, so
/// re-phrasings that differ only in spacing or case are not re-explored.
class AssumptionLedger {
public:
    /// Returns true when the directive was new and is now pending.
    bool enqueue(const std::string& directive);

    /// Pops the oldest pending directive and marks it explored.
    std::optional<std::string> dequeue();

    bool pending_empty() const { return pending_.empty(); }
    const std::deque<std::string>& pending() const { return pending_; }
    const std::vector<std::string>& explored() const { return explored_; }

    static std::string normalize(const std::string& text);

private:
    std::deque<std::string> pending_;
    std::vector<std::string> explored_;
    std::set<std::string> seen_;
};

} // namespace cotforge::engine
