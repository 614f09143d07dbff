#pragma once
// JSONL run trace. Every engine decision lands here as one event line, and
// the evaluator reads call counts and outcomes back out of the retained
// stream.

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hydra {

// Rough token accounting for budget checks: four characters per token,
// rounded up.
inline size_t token_estimate(std::string_view text) {
    return (text.size() + 3) / 4;
}

class TraceWriter {
public:
    TraceWriter() = default;

    void open(const std::string& path) {
        file_.open(path);
        if (!file_)
            throw std::runtime_error("cannot open trace file: " + path);
    }

    void event(const std::string& type, nlohmann::json payload) {
        payload["event"] = type;
        payload["seq"] = seq_++;
        if (file_.is_open()) file_ << payload.dump() << '\n';
        events_.push_back(std::move(payload));
    }

    void flush() {
        if (file_.is_open()) file_.flush();
    }

    const std::vector<nlohmann::json>& events() const { return events_; }

    size_t count(const std::string& type) const {
        size_t n = 0;
        for (const auto& e : events_)
            if (e.value("event", "") == type) ++n;
        return n;
    }

    // Events of a type emitted after the most recent question_start, for
    // per-question accounting.
    size_t count_since_question(const std::string& type) const {
        size_t n = 0;
        for (auto it = events_.rbegin(); it != events_.rend(); ++it) {
            if (it->value("event", "") == "question_start") break;
            if (it->value("event", "") == type) ++n;
        }
        return n;
    }

private:
    std::ofstream file_;
    std::vector<nlohmann::json> events_;
    size_t seq_ = 0;
};

}  // namespace hydra
