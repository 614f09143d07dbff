#pragma once
// Prompt pack: the closed set of prompt kinds, their slot contracts, and the
// template renderer. Templates may be overridden from a directory of .txt
// files named after each kind.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hydra/types.hpp"

namespace hydra {

enum class PromptKind {
    QuestionAnalysis,
    SourceSelect,
    ParagraphToPath,
    RefinedExploration,
    PredictExploration,
    PathSelect,
    PathRefine,
    CotEvaluate,
    CotGenerate,
};

inline const char* to_string(PromptKind k) {
    switch (k) {
        case PromptKind::QuestionAnalysis: return "question_analysis";
        case PromptKind::SourceSelect: return "source_select";
        case PromptKind::ParagraphToPath: return "paragraph_to_path";
        case PromptKind::RefinedExploration: return "refined_exploration";
        case PromptKind::PredictExploration: return "predict_exploration";
        case PromptKind::PathSelect: return "path_select";
        case PromptKind::PathRefine: return "path_refine";
        case PromptKind::CotEvaluate: return "cot_evaluate";
        case PromptKind::CotGenerate: return "cot_generate";
    }
    return "unknown";
}

inline const std::vector<PromptKind>& all_prompt_kinds() {
    static const std::vector<PromptKind> kinds{
        PromptKind::QuestionAnalysis,  PromptKind::SourceSelect,
        PromptKind::ParagraphToPath,   PromptKind::RefinedExploration,
        PromptKind::PredictExploration, PromptKind::PathSelect,
        PromptKind::PathRefine,        PromptKind::CotEvaluate,
        PromptKind::CotGenerate,
    };
    return kinds;
}

inline PromptKind prompt_kind_from_string(std::string_view s) {
    for (PromptKind k : all_prompt_kinds())
        if (s == to_string(k)) return k;
    throw std::runtime_error("unknown prompt kind: " + std::string(s));
}

using SlotValues = std::map<std::string, std::string>;

inline const std::vector<std::string>& prompt_slots(PromptKind k) {
    static const std::map<PromptKind, std::vector<std::string>> slots{
        {PromptKind::QuestionAnalysis, {"Query", "Topic Entity"}},
        {PromptKind::SourceSelect,
         {"Query", "Provided sources", "Question analysis"}},
        {PromptKind::ParagraphToPath,
         {"Query", "Topic Entity", "Paragraph 1", "Paragraph 2",
          "Paragraph 3"}},
        {PromptKind::RefinedExploration,
         {"Query", "Split Question", "Related Paths"}},
        {PromptKind::PredictExploration,
         {"Query", "Skyline Indicator", "Existing Knowledge Paths"}},
        {PromptKind::PathSelect, {"Query", "Candidate Paths"}},
        {PromptKind::PathRefine, {"Query", "Candidate Paths"}},
        {PromptKind::CotEvaluate, {"Query", "Related Paths"}},
        {PromptKind::CotGenerate, {"Query", "Related Paths"}},
    };
    return slots.at(k);
}

namespace detail {

inline std::string builtin_template(PromptKind k) {
    switch (k) {
        case PromptKind::QuestionAnalysis:
            return
                "You split a question into its reasoning skeleton.\n"
                "\n"
                "Given a question and its topic entities, reply with three "
                "lines:\n"
                "Topic Entities: the entities the question pivots on, "
                "separated by ';'\n"
                "Split Questions: one sub-question per reasoning hop, "
                "separated by '|'\n"
                "Skyline Indicator: the expected reasoning chain written as "
                "{entity} - relation - {entity}, with {answer} standing for "
                "the unknown\n"
                "\n"
                "Example:\n"
                "Q: What degree did Brad Paisley earn after leaving West "
                "Liberty State College?\n"
                "Topic Entity: Brad Paisley; West Liberty State College\n"
                "A:\n"
                "Topic Entities: Brad Paisley; West Liberty State College\n"
                "Split Questions: Where did Brad Paisley transfer to? | What "
                "degree did he earn there?\n"
                "Skyline Indicator: {West Liberty State College} - "
                "transferred to - {entity} - earned - {answer}\n"
                "\n"
                "Q: {Query}\n"
                "Topic Entity: {Topic Entity}\n"
                "A:\n";
        case PromptKind::SourceSelect:
            return
                "You choose which evidence sources to consult.\n"
                "\n"
                "Available actions:\n"
                "action1: query the knowledge graph\n"
                "action2: read encyclopedia documents\n"
                "action3: search the web\n"
                "\n"
                "Pick every action you expect to help, restricted to the "
                "provided sources. Reply with action names only, comma "
                "separated.\n"
                "\n"
                "Example:\n"
                "Q: Which team does the Mariner Moose represent?\n"
                "Provided sources: action1, action2, action3\n"
                "Question analysis: {Mariner Moose} - mascot of - {answer}\n"
                "A: action1, action3\n"
                "\n"
                "Q: {Query}\n"
                "Provided sources: {Provided sources}\n"
                "Question analysis: {Question analysis}\n"
                "A:\n";
        case PromptKind::ParagraphToPath:
            return
                "You distill paragraphs into knowledge paths.\n"
                "\n"
                "Write each fact chain as [{entity} - relation - {entity}], "
                "one per line. Every path must start from a topic entity and "
                "use only facts stated in the paragraphs.\n"
                "\n"
                "Example:\n"
                "Q: Where did Brad Paisley earn his degree?\n"
                "Topic Entity: Brad Paisley\n"
                "Paragraph 1: Brad Paisley enrolled at West Liberty State "
                "College before transferring to Belmont University, where he "
                "earned a Bachelor's degree.\n"
                "Paragraph 2: (none)\n"
                "Paragraph 3: (none)\n"
                "A: [{Brad Paisley} - enrolled at - {West Liberty State "
                "College} - transferred to - {Belmont University} - earned - "
                "{Bachelor's degree}]\n"
                "\n"
                "Q: {Query}\n"
                "Topic Entity: {Topic Entity}\n"
                "Paragraph 1: {Paragraph 1}\n"
                "Paragraph 2: {Paragraph 2}\n"
                "Paragraph 3: {Paragraph 3}\n"
                "A:\n";
        case PromptKind::RefinedExploration:
            return
                "You extend a stalled exploration along its split "
                "questions.\n"
                "\n"
                "Given the paths found so far, propose the continuations "
                "that would answer the split question. Write each as "
                "[{entity} - relation - {entity}], one per line.\n"
                "\n"
                "Q: {Query}\n"
                "Split Question: {Split Question}\n"
                "Related Paths: {Related Paths}\n"
                "A:\n";
        case PromptKind::PredictExploration:
            return
                "You predict the missing links when exploration stalls.\n"
                "\n"
                "Follow the skyline indicator over the existing knowledge "
                "paths and provide three predicted results, most plausible "
                "first, each written as [{entity} - relation - {entity}].\n"
                "\n"
                "Q: {Query}\n"
                "Skyline Indicator: {Skyline Indicator}\n"
                "Existing Knowledge Paths: {Existing Knowledge Paths}\n"
                "A:\n";
        case PromptKind::PathSelect:
            return
                "You rank candidate evidence paths by how much they help "
                "answer the question.\n"
                "\n"
                "Reply with the numbers of the useful paths, best first, "
                "comma separated.\n"
                "\n"
                "Q: {Query}\n"
                "Candidate Paths:\n{Candidate Paths}\n"
                "A:\n";
        case PromptKind::PathRefine:
            return
                "You merge and trim evidence paths into the cleanest chains "
                "that bear on the question.\n"
                "\n"
                "Rewrite the useful evidence as [{entity} - relation - "
                "{entity}] lines, dropping hops that do not help.\n"
                "\n"
                "Q: {Query}\n"
                "Candidate Paths:\n{Candidate Paths}\n"
                "A:\n";
        case PromptKind::CotEvaluate:
            return
                "You judge whether the evidence suffices to answer the "
                "question.\n"
                "\n"
                "Think through the paths step by step. If they determine the "
                "answer, reply {Yes} followed by 'Answer: <entity>'. If "
                "anything is missing, reply {No}.\n"
                "\n"
                "Example:\n"
                "Q: Which film connects Logan Lerman and Barry Greaves?\n"
                "Related Paths: [{Logan Lerman} - film.actor.film - {Fury} - "
                "film.film_set_decoration_by - {Barry Greaves}]\n"
                "A: Both people meet at a single film, Fury. {Yes} Answer: "
                "Fury\n"
                "\n"
                "Q: {Query}\n"
                "Related Paths: {Related Paths}\n"
                "A:\n";
        case PromptKind::CotGenerate:
            return
                "You answer from partial evidence.\n"
                "\n"
                "Reason step by step over the given paths plus your own "
                "knowledge of the subject, then finish with 'Answer: "
                "<entity>'.\n"
                "\n"
                "Q: {Query}\n"
                "Related Paths: {Related Paths}\n"
                "A:\n";
    }
    throw std::runtime_error("unknown prompt kind");
}

}  // namespace detail

class PromptPack {
public:
    PromptPack() {
        for (PromptKind k : all_prompt_kinds())
            templates_[k] = detail::builtin_template(k);
    }

    // Overrides built-ins from <dir>/<kind>.txt files. Missing files keep
    // the built-in; present files must still carry every declared slot.
    void load_dir(const std::string& dir) {
        namespace fs = std::filesystem;
        if (!fs::is_directory(dir))
            throw std::runtime_error("prompt directory not found: " + dir);
        for (PromptKind k : all_prompt_kinds()) {
            fs::path file = fs::path(dir) / (std::string(to_string(k)) + ".txt");
            if (!fs::exists(file)) continue;
            std::ifstream in(file);
            std::ostringstream buf;
            buf << in.rdbuf();
            set_template(k, buf.str());
        }
    }

    void set_template(PromptKind k, std::string text) {
        for (const std::string& slot : prompt_slots(k)) {
            if (text.find("{" + slot + "}") == std::string::npos)
                throw std::runtime_error(std::string("template for ") +
                                         to_string(k) + " lacks slot {" +
                                         slot + "}");
        }
        templates_[k] = std::move(text);
    }

    const std::string& template_text(PromptKind k) const {
        return templates_.at(k);
    }

    // Substitutes declared slots only; brace groups that are not declared
    // slot names (path entities, {answer}, {Yes}) pass through untouched.
    std::string render(PromptKind k, const SlotValues& values) const {
        const auto& declared = prompt_slots(k);
        std::set<std::string> declared_set(declared.begin(), declared.end());
        for (const auto& [key, value] : values) {
            if (!declared_set.count(key))
                throw std::runtime_error(std::string("prompt ") +
                                         to_string(k) +
                                         " has no slot named {" + key + "}");
        }
        for (const std::string& slot : declared) {
            if (!values.count(slot))
                throw std::runtime_error(std::string("prompt ") +
                                         to_string(k) + " missing value for {" +
                                         slot + "}");
        }
        const std::string& tmpl = templates_.at(k);
        std::string out;
        out.reserve(tmpl.size());
        size_t pos = 0;
        while (pos < tmpl.size()) {
            size_t open = tmpl.find('{', pos);
            if (open == std::string::npos) {
                out.append(tmpl, pos, std::string::npos);
                break;
            }
            size_t close = tmpl.find('}', open + 1);
            if (close == std::string::npos) {
                out.append(tmpl, pos, std::string::npos);
                break;
            }
            out.append(tmpl, pos, open - pos);
            std::string name = tmpl.substr(open + 1, close - open - 1);
            auto it = values.find(name);
            if (it != values.end()) {
                out.append(it->second);
            } else {
                out.append(tmpl, open, close - open + 1);
            }
            pos = close + 1;
        }
        return out;
    }

private:
    std::map<PromptKind, std::string> templates_;
};

}  // namespace hydra
