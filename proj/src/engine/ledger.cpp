#include "cotforge/engine/ledger.hpp"

#include <cctype>

namespace cotforge::engine {

std::string AssumptionLedger::normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char ch : text) {
        if (std::isspace(ch)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(ch)));
    }
    return out;
}

bool AssumptionLedger::enqueue(const std::string& directive) {
    std::string key = normalize(directive);
    if (key.empty() || seen_.count(key) != 0) {
        return false;
    }
    seen_.insert(std::move(key));
    pending_.push_back(directive);
    return true;
}

std::optional<std::string> AssumptionLedger::dequeue() {
    if (pending_.empty()) {
        return std::nullopt;
    }
    std::string front = std::move(pending_.front());
    pending_.pop_front();
    explored_.push_back(front);
    return front;
}

} // namespace cotforge::engine
