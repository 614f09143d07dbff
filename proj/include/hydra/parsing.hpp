#pragma once
// Parsers for model responses: answer regions, question analysis, source
// selections, rankings, verdicts, and skyline indicator chains.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hydra/paths.hpp"
#include "hydra/types.hpp"

namespace hydra {

// Text after the last line-anchored "A:" marker; the whole text when no
// marker exists. Completions that restate the answer frame and bare
// completions both land on the same region.
inline std::string answer_region(std::string_view text) {
    size_t best = std::string_view::npos;
    size_t pos = 0;
    while (true) {
        size_t hit = text.find("A:", pos);
        if (hit == std::string_view::npos) break;
        bool anchored = hit == 0 || text[hit - 1] == '\n';
        if (anchored) best = hit;
        pos = hit + 2;
    }
    if (best == std::string_view::npos) return trim(text);
    return trim(text.substr(best + 2));
}

// Line payload following a "Label:" prefix, matched case-insensitively
// anywhere in the text. Empty when the label never appears.
inline std::string labeled_line(std::string_view text, std::string_view label) {
    std::string lower = to_lower(text);
    std::string want = to_lower(label);
    size_t pos = lower.find(want);
    if (pos == std::string::npos) return {};
    size_t start = pos + want.size();
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    return trim(text.substr(start, end - start));
}

struct QuestionAnalysis {
    std::vector<std::string> topic_labels;
    std::vector<std::string> split_questions;
    std::string indicator_text;
};

// Reads the three-line analysis format. Absent lines leave their fields
// empty; callers decide what degrades.
inline QuestionAnalysis parse_question_analysis(std::string_view response) {
    std::string region = answer_region(response);
    QuestionAnalysis out;
    for (const std::string& part :
         split(labeled_line(region, "Topic Entities:"), ';')) {
        std::string t = trim(part);
        if (!t.empty()) out.topic_labels.push_back(t);
    }
    for (const std::string& part :
         split(labeled_line(region, "Split Questions:"), '|')) {
        std::string q = trim(part);
        if (!q.empty()) out.split_questions.push_back(q);
    }
    out.indicator_text = labeled_line(region, "Skyline Indicator:");
    return out;
}

struct IndicatorChain {
    std::vector<std::string> slots;       // entity labels or placeholders
    std::vector<std::string> relations;   // between consecutive slots
    std::optional<size_t> answer_index;   // position of the {answer} slot
};

inline bool is_answer_slot(std::string_view label) {
    std::string n = normalize_label(label);
    return n == "answer" || n == "unknown";
}

// Parses "{A} - r1 - {B} - r2 - {answer}" with or without surrounding
// brackets. Requires at least two slots and exactly one answer marker to be
// usable for depth prediction; a chain without one still parses.
inline std::optional<IndicatorChain> parse_indicator(std::string_view text) {
    std::string body = trim(text);
    if (body.empty()) return std::nullopt;
    if (body.front() != '[') body = "[" + body + "]";
    auto parsed = parse_bracketed_path(body);
    if (!parsed) return std::nullopt;
    IndicatorChain chain;
    chain.slots = parsed->entities;
    chain.relations = parsed->relations;
    for (size_t i = 0; i < chain.slots.size(); ++i) {
        if (is_answer_slot(chain.slots[i])) {
            if (chain.answer_index) return std::nullopt;  // two answers
            chain.answer_index = i;
        }
    }
    return chain;
}

// Predicted traversal depth: the farthest hop count between the answer slot
// and a slot naming a topic entity. Falls back to the farthest entity slot
// when no topic matches, and to nullopt when the chain names no answer.
inline std::optional<size_t> predict_depth(
    const IndicatorChain& chain, const std::vector<std::string>& topic_labels) {
    if (!chain.answer_index) return std::nullopt;
    size_t ans = *chain.answer_index;
    std::set<std::string> topics;
    for (const auto& t : topic_labels) topics.insert(normalize_label(t));
    size_t best = 0;
    bool matched = false;
    for (size_t i = 0; i < chain.slots.size(); ++i) {
        if (i == ans) continue;
        if (topics.count(normalize_label(chain.slots[i]))) {
            matched = true;
            best = std::max(best, i > ans ? i - ans : ans - i);
        }
    }
    if (!matched) {
        for (size_t i = 0; i < chain.slots.size(); ++i) {
            if (i == ans || is_answer_slot(chain.slots[i])) continue;
            best = std::max(best, i > ans ? i - ans : ans - i);
        }
    }
    if (best == 0) return std::nullopt;
    return best;
}

// Actions named in the answer region: action1 = graph, action2 = documents,
// action3 = web. Unknown or absent actions simply do not contribute.
inline std::set<SourceKind> parse_source_selection(std::string_view response) {
    std::string region = to_lower(answer_region(response));
    std::set<SourceKind> out;
    if (region.find("action1") != std::string::npos)
        out.insert(SourceKind::Kg);
    if (region.find("action2") != std::string::npos)
        out.insert(SourceKind::Wiki);
    if (region.find("action3") != std::string::npos)
        out.insert(SourceKind::Web);
    return out;
}

// One-based rank list from the answer region, deduplicated, out-of-range
// entries dropped. nullopt when nothing usable remains.
inline std::optional<std::vector<size_t>> parse_ranked_selection(
    std::string_view response, size_t candidate_count) {
    std::string region = answer_region(response);
    std::vector<size_t> out;
    std::set<size_t> seen;
    size_t i = 0;
    while (i < region.size()) {
        if (std::isdigit(static_cast<unsigned char>(region[i]))) {
            size_t j = i;
            while (j < region.size() &&
                   std::isdigit(static_cast<unsigned char>(region[j])))
                ++j;
            unsigned long v = std::stoul(region.substr(i, j - i));
            if (v >= 1 && v <= candidate_count && seen.insert(v - 1).second)
                out.push_back(v - 1);
            i = j;
        } else {
            ++i;
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

// Verdict tokens; the last occurrence of either decides. nullopt when the
// response carries neither.
inline std::optional<bool> parse_yes_no(std::string_view response) {
    size_t yes = response.rfind("{Yes}");
    size_t no = response.rfind("{No}");
    if (yes == std::string_view::npos && no == std::string_view::npos)
        return std::nullopt;
    if (yes == std::string_view::npos) return false;
    if (no == std::string_view::npos) return true;
    return yes > no;
}

// The entity after the last "Answer:" tag, or the tail of the answer region
// when the tag is missing.
inline std::string parse_answer_text(std::string_view response) {
    std::string lower = to_lower(response);
    size_t pos = lower.rfind("answer:");
    if (pos == std::string::npos) return answer_region(response);
    size_t start = pos + 7;
    size_t end = response.find('\n', start);
    if (end == std::string_view::npos) end = response.size();
    std::string out = trim(response.substr(start, end - start));
    while (!out.empty() && (out.back() == '.' || out.back() == '!'))
        out.pop_back();
    return trim(out);
}

}  // namespace hydra
