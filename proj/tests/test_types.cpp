#include <catch2/catch_amalgamated.hpp>

#include "hydra/embedding.hpp"
#include "hydra/types.hpp"

using namespace hydra;

TEST_CASE("source kind round trip") {
    REQUIRE(std::string(to_string(SourceKind::Kg)) == "kg");
    REQUIRE(std::string(to_string(SourceKind::Wiki)) == "wiki");
    REQUIRE(std::string(to_string(SourceKind::Web)) == "web");
    REQUIRE(source_kind_from_string("kg") == SourceKind::Kg);
    REQUIRE(source_kind_from_string("wiki") == SourceKind::Wiki);
    REQUIRE(source_kind_from_string("web") == SourceKind::Web);
    REQUIRE_THROWS_AS(source_kind_from_string("pdf"), std::runtime_error);
}

TEST_CASE("label normalization") {
    REQUIRE(normalize_label("  The  Beatles ") == "the beatles");
    REQUIRE(normalize_label("FURY") == "fury");
    REQUIRE(normalize_label("a\tb\n c") == "a b c");
    REQUIRE(normalize_label("") == "");
}

TEST_CASE("trim and split") {
    REQUIRE(trim("  x  ") == "x");
    REQUIRE(trim("\t\n") == "");
    auto parts = split("a,b,,c", ',');
    REQUIRE(parts == std::vector<std::string>{"a", "b", "", "c"});
    REQUIRE(split("", ',') == std::vector<std::string>{""});
}

TEST_CASE("case insensitive containment") {
    REQUIRE(contains_ci("The Quick Fox", "quick"));
    REQUIRE(contains_ci("abc", ""));
    REQUIRE_FALSE(contains_ci("abc", "abcd"));
}

TEST_CASE("cosine basics") {
    Vector a{1, 0, 0}, b{0, 1, 0}, c{2, 0, 0};
    REQUIRE(cosine(a, b) == Catch::Approx(0.0));
    REQUIRE(cosine(a, c) == Catch::Approx(1.0));
    Vector zero{0, 0, 0};
    REQUIRE(cosine(a, zero) == 0.0);
}

TEST_CASE("hashing embedder is deterministic and normalized") {
    HashingEmbedder e;
    REQUIRE(e.dimension() == 256);
    REQUIRE(e.nonnegative());
    Vector v1 = e.embed("Logan Lerman");
    Vector v2 = e.embed("logan  lerman");
    REQUIRE(v1 == v2);  // normalization folds case and whitespace
    REQUIRE(norm(v1) == Catch::Approx(1.0));
    for (double x : v1) REQUIRE(x >= 0.0);
}

TEST_CASE("hashing embedder separates unlike text") {
    HashingEmbedder e;
    double same = e.similarity("Siege of Vicksburg", "the Siege of Vicksburg");
    double diff = e.similarity("Siege of Vicksburg", "Mariner Moose");
    REQUIRE(same > diff);
    REQUIRE(same > 0.8);
    REQUIRE(diff < 0.5);
}

TEST_CASE("similarity lands in the unit interval") {
    HashingEmbedder e;
    const char* samples[] = {"a", "bb", "ccc", "Fury 2014 film",
                             "music.album.artist"};
    for (const char* x : samples)
        for (const char* y : samples) {
            double s = e.similarity(x, y);
            REQUIRE(s >= 0.0);
            REQUIRE(s <= 1.0);
        }
}
