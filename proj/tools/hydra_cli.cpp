// Command line front end. Three subcommands cover the lifecycle: ingest
// fuses the configured sources into a store directory, ask answers one
// question, eval scores a dataset.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydra/engine.hpp"
#include "hydra/eval.hpp"
#include "hydra/llm_http.hpp"

namespace fs = std::filesystem;

namespace {

// Paths in a config file are taken relative to the file itself.
std::string resolve(const fs::path& base, const std::string& p) {
    if (p.empty()) return p;
    fs::path q(p);
    if (q.is_absolute()) return p;
    return (base / q).lexically_normal().string();
}

void resolve_config_paths(hydra::EngineConfig& cfg, const fs::path& base) {
    for (auto& [name, path] : cfg.kg_sources) path = resolve(base, path);
    cfg.docs_path = resolve(base, cfg.docs_path);
    cfg.web_path = resolve(base, cfg.web_path);
    cfg.prompts_dir = resolve(base, cfg.prompts_dir);
    cfg.dataset_path = resolve(base, cfg.dataset_path);
    cfg.transcript_path = resolve(base, cfg.transcript_path);
}

struct Runtime {
    hydra::KnowledgeGraph graph;
    hydra::DocumentStore docs;
    hydra::FixtureWebSearch web;
    bool has_docs = false;
    bool has_web = false;
    std::unique_ptr<hydra::LlmClient> llm;

    hydra::EngineSources sources() {
        return {&graph, has_docs ? &docs : nullptr,
                has_web ? &web : nullptr};
    }
};

void load_data(const hydra::EngineConfig& cfg, const std::string& store_dir,
               Runtime& rt) {
    if (!store_dir.empty()) {
        hydra::StoreManifest m =
            hydra::read_manifest(store_dir + "/manifest.json");
        rt.graph = hydra::load_kg_tsv(store_dir + "/fused.tsv", "kg");
        if (m.documents > 0) {
            rt.docs.load_jsonl(store_dir + "/docs.jsonl");
            rt.has_docs = true;
        }
        if (m.web_fixture) {
            rt.web.load_jsonl(store_dir + "/web.jsonl");
            rt.has_web = true;
        }
        return;
    }
    std::vector<hydra::KnowledgeGraph> parts;
    for (const auto& [name, path] : cfg.kg_sources)
        parts.push_back(hydra::load_kg_tsv(path, name));
    if (!parts.empty()) {
        hydra::HashingEmbedder embedder;
        rt.graph = hydra::fuse_graphs(parts, cfg.entity_match, embedder);
    }
    if (!cfg.docs_path.empty()) {
        rt.docs.load_jsonl(cfg.docs_path);
        rt.has_docs = true;
    }
    if (!cfg.web_path.empty()) {
        rt.web.load_jsonl(cfg.web_path);
        rt.has_web = true;
    }
}

void make_llm(const hydra::EngineConfig& cfg, Runtime& rt) {
    if (!cfg.transcript_path.empty()) {
        auto scripted = std::make_unique<hydra::ScriptedLlm>();
        scripted->load_jsonl(cfg.transcript_path);
        rt.llm = std::move(scripted);
        return;
    }
    if (const char* url = std::getenv("HYDRA_API_URL")) {
        hydra::HttpLlmConfig hc;
        hc.base_url = url;
        if (const char* model = std::getenv("HYDRA_MODEL")) hc.model = model;
        rt.llm = std::make_unique<hydra::HttpLlm>(hc);
        return;
    }
    throw std::runtime_error(
        "no model configured: set transcript in the config file or export "
        "HYDRA_API_URL");
}

std::string join_kinds(const std::set<hydra::SourceKind>& kinds) {
    std::string out;
    for (hydra::SourceKind k : kinds) {
        if (!out.empty()) out += ", ";
        out += hydra::to_string(k);
    }
    return out.empty() ? "none" : out;
}

void print_answer(const hydra::AnswerResult& r) {
    std::cout << "answer: " << r.answer << "\n"
              << "phase: " << r.phase << "\n"
              << "verified_by: " << join_kinds(r.verified_by) << "\n"
              << "llm_calls: " << r.llm_calls << "\n"
              << "degraded: " << (r.degraded ? "true" : "false") << "\n";
    if (!r.supporting.empty()) {
        std::cout << "supporting:\n";
        for (const auto& sp : r.supporting)
            std::cout << "  " << hydra::serialize_path(sp.path) << "\n";
    }
}

int run_ingest(const hydra::EngineConfig& cfg, const std::string& out_dir) {
    Runtime rt;
    load_data(cfg, "", rt);
    fs::create_directories(out_dir);
    hydra::save_kg_tsv(rt.graph, out_dir + "/fused.tsv");
    if (rt.has_docs)
        fs::copy_file(cfg.docs_path, fs::path(out_dir) / "docs.jsonl",
                      fs::copy_options::overwrite_existing);
    if (rt.has_web)
        fs::copy_file(cfg.web_path, fs::path(out_dir) / "web.jsonl",
                      fs::copy_options::overwrite_existing);
    hydra::StoreManifest m;
    m.kg_entities = rt.graph.entity_count();
    m.kg_triples = rt.graph.triple_count();
    m.documents = rt.docs.size();
    m.web_fixture = rt.has_web;
    for (const auto& [name, path] : cfg.kg_sources)
        m.graph_sources.push_back(name);
    hydra::write_manifest(m, out_dir + "/manifest.json");
    std::cout << "store written to " << out_dir << "\n"
              << "entities: " << m.kg_entities << "\n"
              << "triples: " << m.kg_triples << "\n"
              << "documents: " << m.documents << "\n"
              << "web_fixture: " << (m.web_fixture ? "yes" : "no") << "\n";
    return 0;
}

int run_ask(const hydra::EngineConfig& cfg, const std::string& store_dir,
            const std::string& trace_path, const std::string& question,
            const std::string& qid) {
    Runtime rt;
    load_data(cfg, store_dir, rt);
    make_llm(cfg, rt);
    hydra::TraceWriter trace;
    if (!trace_path.empty()) trace.open(trace_path);
    hydra::HashingEmbedder embedder;
    hydra::Engine engine(cfg, rt.sources(), *rt.llm, embedder, trace);
    print_answer(engine.answer_question(question, qid));
    return 0;
}

int run_eval(const hydra::EngineConfig& cfg, const std::string& store_dir,
             const std::string& trace_path, const std::string& dataset_path,
             const std::string& report_path, size_t limit) {
    std::string path =
        dataset_path.empty() ? cfg.dataset_path : dataset_path;
    if (path.empty())
        throw std::runtime_error(
            "no dataset: pass --dataset or set dataset in the config");
    std::vector<hydra::DatasetItem> items = hydra::load_dataset(path);
    if (limit > 0 && items.size() > limit) items.resize(limit);

    Runtime rt;
    load_data(cfg, store_dir, rt);
    make_llm(cfg, rt);
    hydra::TraceWriter trace;
    if (!trace_path.empty()) trace.open(trace_path);
    hydra::HashingEmbedder embedder;
    hydra::Engine engine(cfg, rt.sources(), *rt.llm, embedder, trace);

    hydra::EvalReport report = hydra::evaluate(
        items, [&](const std::string& q, const std::string& id) {
            return engine.answer_question(q, id);
        });

    for (const auto& o : report.outcomes) {
        std::cout << o.id << (o.hit ? " hit " : " miss ") << "predicted=\""
                  << o.predicted << "\" gold=\"" << o.gold
                  << "\" phase=" << o.phase << " calls=" << o.llm_calls
                  << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", report.hits_at_1());
    std::cout << "hits@1: " << buf << " (" << report.hits << "/"
              << report.total << ")\n"
              << "llm_calls: " << report.llm_calls << "\n";

    if (!report_path.empty()) {
        nlohmann::json j;
        j["hits_at_1"] = report.hits_at_1();
        j["hits"] = report.hits;
        j["total"] = report.total;
        j["llm_calls"] = report.llm_calls;
        j["items"] = nlohmann::json::array();
        for (const auto& o : report.outcomes)
            j["items"].push_back({{"id", o.id},
                                  {"question", o.question},
                                  {"gold", o.gold},
                                  {"predicted", o.predicted},
                                  {"phase", o.phase},
                                  {"hit", o.hit},
                                  {"llm_calls", o.llm_calls}});
        std::ofstream out(report_path);
        if (!out)
            throw std::runtime_error("cannot write report: " + report_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid graph and text question answering"};
    app.require_subcommand(1);

    std::string config_path;
    std::string store_dir;
    std::string trace_path;
    std::string mode;
    uint64_t seed = 0;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "config file (key = value)");
    app.add_option("--store", store_dir,
                   "store directory written by ingest");
    app.add_option("--trace", trace_path, "write a JSONL run trace here");
    app.add_option("--mode", mode, "hydra or hydra-e");
    auto* seed_opt =
        app.add_option("--seed", seed, "seed for relation sampling");
    app.add_option("--set", sets, "override a config key, key=value");

    auto* ingest = app.add_subcommand(
        "ingest", "fuse the configured sources into a store directory");
    std::string out_dir;
    ingest->add_option("--out", out_dir, "output directory")->required();

    auto* ask = app.add_subcommand("ask", "answer a single question");
    std::string question;
    std::string qid;
    ask->add_option("question", question, "the question text")->required();
    ask->add_option("--id", qid, "question id recorded in the trace");

    auto* eval_cmd =
        app.add_subcommand("eval", "answer a dataset and report hits@1");
    std::string dataset_path;
    std::string report_path;
    size_t limit = 0;
    eval_cmd->add_option("--dataset", dataset_path,
                         "dataset JSONL, overrides the config");
    eval_cmd->add_option("--report", report_path,
                         "write a JSON report here");
    eval_cmd->add_option("--limit", limit, "evaluate only the first N items");

    CLI11_PARSE(app, argc, argv);

    try {
        hydra::EngineConfig cfg;
        if (!config_path.empty()) {
            cfg = hydra::EngineConfig::from_file(config_path);
            resolve_config_paths(
                cfg, fs::absolute(fs::path(config_path)).parent_path());
        }
        for (const std::string& kv : sets) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--set expects key=value, got: " +
                                         kv);
            cfg.apply(hydra::trim(kv.substr(0, eq)),
                      hydra::trim(kv.substr(eq + 1)));
        }
        if (!mode.empty()) cfg.mode = mode;
        if (seed_opt->count() > 0) cfg.seed = seed;
        cfg.validate();

        if (ingest->parsed()) return run_ingest(cfg, out_dir);
        if (ask->parsed())
            return run_ask(cfg, store_dir, trace_path, question, qid);
        if (eval_cmd->parsed())
            return run_eval(cfg, store_dir, trace_path, dataset_path,
                            report_path, limit);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
