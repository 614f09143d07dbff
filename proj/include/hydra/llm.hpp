#pragma once
// Language model clients. The engine talks to the LlmClient interface; the
// scripted client replays canned responses for offline runs and tests.

#include <algorithm>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hydra/prompts.hpp"

namespace hydra {

struct LlmSettings {
    double temperature = 0.0;
    size_t max_tokens = 256;
};

struct LlmRequest {
    PromptKind kind = PromptKind::QuestionAnalysis;
    std::string prompt;
    LlmSettings settings;
};

class LlmClient {
public:
    virtual ~LlmClient() = default;
    virtual std::string complete(const LlmRequest& request) = 0;
};

// Replays a transcript. Each entry answers the first pending request whose
// kind matches and whose prompt contains the entry's match substring; an
// entry is consumed on use unless marked sticky.
class ScriptedLlm final : public LlmClient {
public:
    struct Entry {
        PromptKind kind = PromptKind::QuestionAnalysis;
        std::string match;  // empty matches any prompt of the kind
        std::string response;
        bool sticky = false;
        bool used = false;
    };

    void add(PromptKind kind, std::string match, std::string response,
             bool sticky = false) {
        entries_.push_back(
            {kind, std::move(match), std::move(response), sticky, false});
    }

    // Lines of {"kind": ..., "match": ..., "response": ..., "sticky": ...}.
    void load_jsonl(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open transcript: " + path);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string body = trim(line);
            if (body.empty() || body[0] == '#') continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(body);
            } catch (const nlohmann::json::exception& ex) {
                throw std::runtime_error("transcript line " +
                                         std::to_string(lineno) + ": " +
                                         ex.what());
            }
            Entry e;
            e.kind = prompt_kind_from_string(j.at("kind").get<std::string>());
            e.match = j.value("match", std::string{});
            e.response = j.at("response").get<std::string>();
            e.sticky = j.value("sticky", false);
            entries_.push_back(std::move(e));
        }
    }

    std::string complete(const LlmRequest& request) override {
        std::lock_guard<std::mutex> lock(mutex_);
        calls_.push_back(request);
        for (Entry& e : entries_) {
            if (e.used) continue;
            if (e.kind != request.kind) continue;
            if (!e.match.empty() &&
                request.prompt.find(e.match) == std::string::npos)
                continue;
            if (!e.sticky) e.used = true;
            return e.response;
        }
        std::string head = request.prompt.substr(
            0, std::min<size_t>(request.prompt.size(), 160));
        throw std::runtime_error(
            std::string("no scripted response for kind ") +
            to_string(request.kind) + "; prompt begins: " + head);
    }

    const std::vector<LlmRequest>& calls() const { return calls_; }
    size_t call_count() const { return calls_.size(); }
    size_t unused_count() const {
        size_t n = 0;
        for (const Entry& e : entries_)
            if (!e.used && !e.sticky) ++n;
        return n;
    }

private:
    std::vector<Entry> entries_;
    std::vector<LlmRequest> calls_;
    std::mutex mutex_;
};

}  // namespace hydra
