#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "boxfinder/porter.hpp"
#include "boxfinder/rng.hpp"
#include "boxfinder/textproc.hpp"

using namespace boxfinder;

namespace {

std::string random_text(RngStream& rng, size_t len) {
    static const std::string charset =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,-'/():;\"\t\n";
    std::string s;
    s.reserve(len);
    for (size_t i = 0; i < len; ++i) {
        s.push_back(charset[rng.bounded(charset.size())]);
    }
    return s;
}

} // namespace

TEST_SUITE("textproc") {

TEST_CASE("tokenize splits on everything but letters and digits") {
    CHECK(tokenize("Church Newspaper Calls for Democracy") ==
          std::vector<std::string>{"church", "newspaper", "calls", "for", "democracy"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("   \t\n ") == std::vector<std::string>{});
    CHECK(tokenize("D'AFFAIRES 1970-73") == std::vector<std::string>{"d", "affaires", "1970", "73"});
    CHECK(tokenize("a1b2") == std::vector<std::string>{"a1b2"});
}

TEST_CASE("bytes outside ascii separate tokens") {
    CHECK(tokenize("caf\xc3\xa9") == std::vector<std::string>{"caf"});
    CHECK(tokenize("S\xc3\xa3o Paulo") == std::vector<std::string>{"s", "o", "paulo"});
}

TEST_CASE("stemmer handles the classic plural and suffix forms") {
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("caress") == "caress");
    CHECK(porter_stem("cats") == "cat");
    CHECK(porter_stem("agreed") == "agre");
    CHECK(porter_stem("plastered") == "plaster");
    CHECK(porter_stem("motoring") == "motor");
    CHECK(porter_stem("conflated") == "conflat");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("falling") == "fall");
    CHECK(porter_stem("filing") == "file");
    CHECK(porter_stem("happy") == "happi");
    CHECK(porter_stem("sky") == "sky");
    CHECK(porter_stem("generalizations") == "gener");
    CHECK(porter_stem("oscillators") == "oscil");
}

TEST_CASE("short tokens and digit-bearing tokens pass through") {
    CHECK(porter_stem("is") == "is");
    CHECK(porter_stem("as") == "as");
    CHECK(porter_stem("be") == "be");
    CHECK(porter_stem("a") == "a");
    CHECK(porter_stem("1970") == "1970");
    CHECK(porter_stem("73") == "73");
    CHECK(porter_stem("w0042") == "w0042");
    CHECK(porter_stem("abc123ing") == "abc123ing");
}

TEST_CASE("stemmer agrees with the hand-derived vector file") {
    std::ifstream in(std::string(BOXFINDER_TEST_DATA_DIR) + "/porter_vectors.txt");
    REQUIRE_MESSAGE(in.good(), "porter_vectors.txt must exist");
    size_t checked = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string word;
        std::string want;
        REQUIRE(bool(row >> word >> want));
        CHECK_MESSAGE(porter_stem(word) == want, "word: ", word);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("analyze is tokenize followed by stemming") {
    CHECK(analyze("Brazilian Laws") == TermSequence{"brazilian", "law"});
    CHECK(analyze("the the the") == TermSequence{"the", "the", "the"});
    CHECK(analyze("") == TermSequence{});
    CHECK(analyze("D'AFFAIRES 1970-73") == TermSequence{"d", "affair", "1970", "73"});
}

TEST_CASE("fuzz: token output alphabet and per-token stemming") {
    RngStream rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::string text = random_text(rng, rng.bounded(120));
        const std::vector<std::string> tokens = tokenize(text);
        for (const std::string& t : tokens) {
            REQUIRE(!t.empty());
            for (char c : t) {
                REQUIRE(((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')));
            }
        }
        const TermSequence terms = analyze(text);
        REQUIRE(terms.size() == tokens.size());
        for (size_t i = 0; i < tokens.size(); ++i) {
            REQUIRE(terms[i] == porter_stem(tokens[i]));
        }
    }
}

TEST_CASE("fuzz: tokenizing a separator join equals concatenation") {
    RngStream rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string a = random_text(rng, rng.bounded(60));
        const std::string b = random_text(rng, rng.bounded(60));
        std::vector<std::string> want = tokenize(a);
        const std::vector<std::string> tb = tokenize(b);
        want.insert(want.end(), tb.begin(), tb.end());
        CHECK(tokenize(a + " " + b) == want);
        CHECK(tokenize(a + "\n" + b) == want);
    }
}

}
