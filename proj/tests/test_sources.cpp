#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "hydra/retrieval.hpp"
#include "hydra/store.hpp"

using namespace hydra;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream f(p);
    f << content;
    return p;
}

}  // namespace

TEST_CASE("sentence splitting merges short fragments forward") {
    auto s = split_sentences(
        "Gen. U.S. Grant commanded the Union army at Vicksburg. The siege "
        "lasted forty days! Did it succeed? Yes.");
    REQUIRE(s.size() == 3);
    REQUIRE(s[0] ==
            "Gen. U.S. Grant commanded the Union army at Vicksburg.");
    REQUIRE(s[1] == "The siege lasted forty days!");
    // The trailing short fragment folds into the previous sentence.
    REQUIRE(s[2] == "Did it succeed? Yes.");
}

TEST_CASE("sentence splitting handles edge shapes") {
    REQUIRE(split_sentences("").empty());
    auto one = split_sentences("No terminal punctuation at all here");
    REQUIRE(one.size() == 1);
    auto tiny = split_sentences("Hi. Ho.");
    REQUIRE(tiny.size() == 1);
    REQUIRE(tiny[0] == "Hi. Ho.");
}

TEST_CASE("sentence selection ranks by reference similarity") {
    HashingEmbedder e;
    std::vector<std::string> sentences{
        "The capital of France is Paris.",
        "Logan Lerman starred in the war film Fury.",
        "Barry Greaves worked on set decoration for Fury.",
    };
    Vector ref = e.embed("Which film connects Logan Lerman and Barry Greaves?");
    auto top = select_sentences(sentences, e, ref, 2);
    REQUIRE(top.size() == 2);
    for (const auto& s : top) REQUIRE(s.find("Fury") != std::string::npos);
    auto all = select_sentences(sentences, e, ref, 10);
    REQUIRE(all.size() == 3);
}

TEST_CASE("document store finds by normalized label") {
    DocumentStore store;
    store.add({"Mariner Moose", "Mariner Moose", "The mascot."});
    store.add({"Fury", "Fury (film)", "A 2014 war film."});
    REQUIRE(store.find("mariner  MOOSE").size() == 1);
    REQUIRE(store.find("nobody").empty());
    REQUIRE(store.size() == 2);
    REQUIRE_THROWS_AS(store.add({"", "t", "b"}), std::runtime_error);
}

TEST_CASE("document store loads jsonl") {
    auto p = temp_file("hydra_docs_test.jsonl",
                       "# docs\n"
                       R"x({"entity": "Fury", "title": "Fury (film)", "body": "A war film."})x"
                       "\n");
    DocumentStore store;
    store.load_jsonl(p.string());
    REQUIRE(store.size() == 1);
    REQUIRE(store.find("Fury")[0]->title == "Fury (film)");
    fs::remove(p);
    REQUIRE_THROWS_AS(store.load_jsonl("/nonexistent/docs.jsonl"),
                      std::runtime_error);
}

TEST_CASE("web fixture answers canned queries") {
    auto p = temp_file(
        "hydra_web_test.jsonl",
        R"({"query": "Who does the Mariner Moose represent?", "results": [{"title": "Mariner Moose", "snippet": "Mascot of the Seattle Mariners.", "url": "https://example.test/moose"}], "pages": {"https://example.test/moose": "The Mariner Moose is the mascot of the Seattle Mariners baseball team."}})"
        "\n");
    FixtureWebSearch web;
    web.load_jsonl(p.string());
    auto hits = web.search("who does the mariner moose REPRESENT?");
    REQUIRE(hits.size() == 1);
    REQUIRE(hits[0].url == "https://example.test/moose");
    REQUIRE(web.fetch(hits[0].url).find("baseball team") != std::string::npos);
    REQUIRE(web.search("unrelated").empty());
    REQUIRE(web.fetch("https://nowhere.test/").empty());
    fs::remove(p);
}

TEST_CASE("available sources reflect what is loaded") {
    KnowledgeGraph kg;
    DocumentStore docs;
    FixtureWebSearch web;
    REQUIRE(detect_available_sources(&kg, &docs, nullptr).empty());
    Triple t;
    t.head = "a";
    t.relation = "r";
    t.tail = "b";
    t.source = "kg";
    kg.add_triple(t);
    docs.add({"a", "a", "body"});
    auto all = detect_available_sources(&kg, &docs, &web);
    REQUIRE(all == std::set<SourceKind>{SourceKind::Kg, SourceKind::Wiki,
                                        SourceKind::Web});
    REQUIRE(detect_available_sources(nullptr, nullptr, &web) ==
            std::set<SourceKind>{SourceKind::Web});
}

TEST_CASE("document retrieval distills paths and enforces topics") {
    KnowledgeGraph g;
    g.add_entity("m.moose", "Mariner Moose", "kg");
    g.add_entity("m.mariners", "Seattle Mariners", "kg");

    DocumentStore docs;
    docs.add({"Mariner Moose", "Mariner Moose",
              "The Mariner Moose is the mascot of the Seattle Mariners. It "
              "debuted in 1990 and performs at every home game in Seattle."});

    ScriptedLlm llm;
    llm.add(PromptKind::ParagraphToPath, "Mariner Moose",
            "A: [{Mariner Moose} - mascot of - {Seattle Mariners}]\n"
            "[{Kingdome} - located in - {Seattle}]");

    HashingEmbedder e;
    PromptPack prompts;
    std::string q = "Which team does the Mariner Moose represent?";
    auto res = unstructured_retrieve(docs, q, g, {"m.moose"}, e, e.embed(q),
                                     prompts, llm, {0.4, 256});
    REQUIRE(res.llm_calls == 1);
    REQUIRE(res.paths.size() == 1);
    REQUIRE(res.dropped == 1);
    REQUIRE(res.paths[0].origin == SourceKind::Wiki);
    REQUIRE(res.paths[0].steps[0].head_id == "m.moose");
    REQUIRE(res.paths[0].steps[0].tail_id == "m.mariners");
    REQUIRE(res.paragraphs.size() == 2);

    // The prompt carried the selected sentences.
    const auto& sent = llm.calls()[0].prompt;
    REQUIRE(sent.find("mascot of the Seattle Mariners") != std::string::npos);
    REQUIRE(sent.find("Paragraph 3: (none)") != std::string::npos);
}

TEST_CASE("document retrieval with no matching documents is silent") {
    KnowledgeGraph g;
    g.add_entity("m.x", "X", "kg");
    DocumentStore docs;
    ScriptedLlm llm;  // would throw if called
    HashingEmbedder e;
    PromptPack prompts;
    auto res = unstructured_retrieve(docs, "q", g, {"m.x"}, e, e.embed("q"),
                                     prompts, llm, {});
    REQUIRE(res.paths.empty());
    REQUIRE(res.llm_calls == 0);
}

TEST_CASE("web retrieval reads the best pages") {
    auto p = temp_file(
        "hydra_web_retrieve.jsonl",
        R"({"query": "Which team does the Mariner Moose represent?", "results": [{"title": "Mariner Moose facts", "snippet": "The Mariner Moose represents the Seattle Mariners.", "url": "https://example.test/moose"}, {"title": "Paris travel", "snippet": "Paris is lovely in spring.", "url": "https://example.test/paris"}], "pages": {"https://example.test/moose": "The Mariner Moose has represented the Seattle Mariners since 1990. The costume is a moose in a baseball uniform.", "https://example.test/paris": "Paris has many museums worth visiting in spring."}})"
        "\n");
    FixtureWebSearch web;
    web.load_jsonl(p.string());
    fs::remove(p);

    KnowledgeGraph g;
    g.add_entity("m.moose", "Mariner Moose", "kg");
    ScriptedLlm llm;
    llm.add(PromptKind::ParagraphToPath, "Moose",
            "A: [{Mariner Moose} - represents - {Seattle Mariners}]");
    HashingEmbedder e;
    PromptPack prompts;
    std::string q = "Which team does the Mariner Moose represent?";
    auto res = web_retrieve(web, q, g, {"m.moose"}, e, e.embed(q), prompts,
                            llm, {0.4, 256});
    REQUIRE(res.paths.size() == 1);
    REQUIRE(res.paths[0].origin == SourceKind::Web);
    REQUIRE(res.paths[0].steps[0].head_id == "m.moose");
    // Unresolved tail keeps its surface label as id.
    REQUIRE(res.paths[0].steps[0].tail_id == "Seattle Mariners");
    const auto& sent = llm.calls()[0].prompt;
    REQUIRE(sent.find("since 1990") != std::string::npos);
}

TEST_CASE("web retrieval with no hits makes no calls") {
    FixtureWebSearch web;
    KnowledgeGraph g;
    ScriptedLlm llm;
    HashingEmbedder e;
    PromptPack prompts;
    auto res = web_retrieve(web, "q", g, {}, e, e.embed("q"), prompts, llm, {});
    REQUIRE(res.paths.empty());
    REQUIRE(res.llm_calls == 0);
}

TEST_CASE("graph tsv loads labels comments and errors") {
    auto p = temp_file("hydra_kg_test.tsv",
                       "# test graph\n"
                       "m.a\tAlpha\tknows\tm.b\tBeta\n"
                       "\n"
                       "m.b\tBeta\tnear\tm.c\tGamma\n");
    auto g = load_kg_tsv(p.string(), "kg");
    REQUIRE(g.triple_count() == 2);
    REQUIRE(g.entity("m.a")->label == "Alpha");
    REQUIRE(g.entity("m.c")->label == "Gamma");
    REQUIRE(g.entity("m.a")->sources == std::set<std::string>{"kg"});
    fs::remove(p);

    auto bad = temp_file("hydra_kg_bad.tsv", "m.a\tAlpha\tknows\n");
    REQUIRE_THROWS_WITH(load_kg_tsv(bad.string(), "kg"),
                        Catch::Matchers::ContainsSubstring("line 1"));
    fs::remove(bad);
    REQUIRE_THROWS_AS(load_kg_tsv("/nonexistent.tsv", "kg"),
                      std::runtime_error);
}

TEST_CASE("graph tsv round trips") {
    auto p = temp_file("hydra_kg_rt.tsv",
                       "m.a\tAlpha\tknows\tm.b\tBeta\n"
                       "m.b\tBeta\tnear\tm.c\tGamma\n");
    auto g = load_kg_tsv(p.string(), "kg");
    fs::path out = fs::temp_directory_path() / "hydra_kg_rt_out.tsv";
    save_kg_tsv(g, out.string());
    auto g2 = load_kg_tsv(out.string(), "kg");
    REQUIRE(g2.triple_count() == g.triple_count());
    REQUIRE(g2.entity("m.b")->label == "Beta");
    fs::remove(p);
    fs::remove(out);
}

TEST_CASE("dataset and manifest round trip") {
    auto p = temp_file(
        "hydra_dataset_test.jsonl",
        R"({"id": "q1", "question": "Who?", "answer": "Grant"})" "\n"
        R"({"question": "What?", "answer": "Fury"})" "\n");
    auto items = load_dataset(p.string());
    REQUIRE(items.size() == 2);
    REQUIRE(items[0].id == "q1");
    REQUIRE(items[1].id == "q2");  // line number fallback
    REQUIRE(items[1].answer == "Fury");
    fs::remove(p);

    StoreManifest m;
    m.kg_entities = 10;
    m.kg_triples = 12;
    m.documents = 3;
    m.web_fixture = true;
    m.graph_sources = {"freebase", "wikikg"};
    fs::path mp = fs::temp_directory_path() / "hydra_manifest_test.json";
    write_manifest(m, mp.string());
    auto m2 = read_manifest(mp.string());
    REQUIRE(m2.kg_triples == 12);
    REQUIRE(m2.web_fixture);
    REQUIRE(m2.graph_sources == std::vector<std::string>{"freebase", "wikikg"});
    fs::remove(mp);
}
