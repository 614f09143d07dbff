#pragma once
// Answer normalization and the Hits@1 evaluator over a dataset file.

#include <cctype>
#include <string>
#include <vector>

#include "hydra/store.hpp"
#include "hydra/types.hpp"

namespace hydra {

// Canonical answer form: case folded, article stripped, trailing period
// dropped, whitespace collapsed. A prediction matches iff the normal forms
// are equal.
inline std::string normalize_answer(std::string_view text) {
    std::string s = to_lower(trim(text));
    for (const char* article : {"a ", "an ", "the "}) {
        std::string prefix(article);
        if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
            s = std::string(trim(s.substr(prefix.size())));
            break;
        }
    }
    while (!s.empty() && s.back() == '.') s.pop_back();
    std::string out;
    bool in_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out += ' ';
        in_space = false;
        out += c;
    }
    return out;
}

inline bool answers_match(std::string_view predicted, std::string_view gold) {
    return normalize_answer(predicted) == normalize_answer(gold);
}

struct EvalOutcome {
    std::string id;
    std::string question;
    std::string gold;
    std::string predicted;
    std::string phase;
    bool hit = false;
    size_t llm_calls = 0;
};

struct EvalReport {
    std::vector<EvalOutcome> outcomes;
    size_t hits = 0;
    size_t total = 0;
    size_t llm_calls = 0;

    double hits_at_1() const {
        return total ? static_cast<double>(hits) / static_cast<double>(total)
                     : 0.0;
    }
};

// Engine is any callable (question, id) -> AnswerResult-like with .answer,
// .phase and .llm_calls members.
template <typename AnswerFn>
EvalReport evaluate(const std::vector<DatasetItem>& items, AnswerFn&& answer) {
    EvalReport report;
    for (const DatasetItem& item : items) {
        auto result = answer(item.question, item.id);
        EvalOutcome o;
        o.id = item.id;
        o.question = item.question;
        o.gold = item.answer;
        o.predicted = result.answer;
        o.phase = result.phase;
        o.hit = answers_match(result.answer, item.answer);
        o.llm_calls = result.llm_calls;
        report.outcomes.push_back(std::move(o));
        report.total += 1;
        report.hits += report.outcomes.back().hit ? 1 : 0;
        report.llm_calls += result.llm_calls;
    }
    return report;
}

}  // namespace hydra
