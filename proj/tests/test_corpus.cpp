#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "boxfinder/corpus.hpp"

using namespace boxfinder;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path =
        (std::filesystem::temp_directory_path() / ("boxfinder_corpus_" + name)).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

const char* two_box_jsonl =
    R"({"doc_id":"d1","box_id":"1902","folder_label":"POL 2-3 BRAZ","title":"Church Newspaper","pages":["first page text","second page"]})"
    "\n"
    R"({"doc_id":"d2","box_id":"1902","folder_label":"POL 5 BRAZ","title":"","pages":["only page"]})"
    "\n"
    R"({"doc_id":"d3","box_id":"1903","folder_label":"POL 12-6 BRAZ 01/01/1967","title":"Party Leaders","pages":["p1","p2","p3"]})"
    "\n";

} // namespace

TEST_SUITE("corpus") {

TEST_CASE("loads well-formed records and derives the box maps") {
    const std::string path = write_temp("ok.jsonl", two_box_jsonl);
    const Collection c = load_collection(path);
    std::remove(path.c_str());

    CHECK(c.documents().size() == 3);
    REQUIRE(c.boxes().count("1902") == 1);
    CHECK(c.boxes().at("1902") == std::vector<std::string>{"d1", "d2"});
    CHECK(c.boxes().at("1903") == std::vector<std::string>{"d3"});
    CHECK(c.folders().at("1902") == std::set<std::string>{"POL 2-3 BRAZ", "POL 5 BRAZ"});
    CHECK(c.document("d1").title == "Church Newspaper");
    CHECK(c.document("d2").title.empty());
    CHECK(c.document("d3").pages.size() == 3);
    CHECK(c.has_document("d2"));
    CHECK(!c.has_document("nope"));
    CHECK_THROWS_AS((void)c.document("nope"), LoadError);
    CHECK(validate_collection(c).empty());
}

TEST_CASE("box ids sort numerically, not lexicographically") {
    std::vector<DocumentRecord> docs;
    for (const char* box : {"1925", "202", "1902", "31"}) {
        docs.push_back({std::string("d-") + box, box, "POL 1", "t", {"x"}});
    }
    const Collection c = Collection::from_documents(std::move(docs));
    CHECK(c.sorted_box_ids() == std::vector<std::string>{"31", "202", "1902", "1925"});
    CHECK(Collection::box_number("1902") == 1902);
    CHECK_THROWS_AS(Collection::box_number("19a"), LoadError);
    long long n = 0;
    CHECK(try_box_number("0042", n));
    CHECK(n == 42);
    CHECK(!try_box_number("", n));
    CHECK(!try_box_number("-3", n));
}

TEST_CASE("load rejects malformed lines with their line number") {
    auto expect_error = [](const std::string& name, const std::string& content, size_t line,
                           const char* needle) {
        const std::string path = write_temp(name, content);
        try {
            load_collection(path);
            FAIL_CHECK("expected LoadError for ", name);
        } catch (const LoadError& e) {
            CHECK(e.line == line);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
        std::remove(path.c_str());
    };

    expect_error("badjson.jsonl", "{not json\n", 1, "malformed JSON");
    expect_error("notobj.jsonl", "[1,2]\n", 1, "not a JSON object");
    expect_error("missing.jsonl",
                 R"({"doc_id":"d1","box_id":"1","folder_label":"x","pages":["p"]})" "\n", 1,
                 "missing field 'title'");
    expect_error("wrongtype.jsonl",
                 R"({"doc_id":"d1","box_id":7,"folder_label":"x","title":"t","pages":["p"]})" "\n",
                 1, "'box_id' must be a string");
    expect_error("badbox.jsonl",
                 R"({"doc_id":"d1","box_id":"7a","folder_label":"x","title":"t","pages":["p"]})"
                 "\n",
                 1, "not a non-negative integer");
    expect_error("nopages.jsonl",
                 R"({"doc_id":"d1","box_id":"7","folder_label":"x","title":"t","pages":[]})" "\n",
                 1, "has no pages");
    expect_error("pagestype.jsonl",
                 R"({"doc_id":"d1","box_id":"7","folder_label":"x","title":"t","pages":"p"})" "\n",
                 1, "'pages' must be an array");
    const std::string dup =
        R"({"doc_id":"d1","box_id":"7","folder_label":"x","title":"t","pages":["p"]})" "\n"
        R"({"doc_id":"d1","box_id":"8","folder_label":"x","title":"t","pages":["p"]})" "\n";
    expect_error("dup.jsonl", dup, 2, "duplicate doc_id 'd1'");
    CHECK_THROWS_AS(load_collection("/nonexistent/path.jsonl"), LoadError);
}

TEST_CASE("blank lines are tolerated") {
    const std::string path = write_temp("blank.jsonl", std::string("\n") + two_box_jsonl + "\n\n");
    const Collection c = load_collection(path);
    std::remove(path.c_str());
    CHECK(c.documents().size() == 3);
}

TEST_CASE("save and reload round-trips every record") {
    const std::string path = write_temp("rt.jsonl", two_box_jsonl);
    const Collection a = load_collection(path);
    const std::string path2 = write_temp("rt2.jsonl", "");
    save_collection(a, path2);
    const Collection b = load_collection(path2);
    std::remove(path.c_str());
    std::remove(path2.c_str());
    CHECK(a.documents() == b.documents());
    CHECK(a.boxes() == b.boxes());
    CHECK(a.folders() == b.folders());
    // A second serialization of the same documents is byte-identical.
    CHECK(collection_to_jsonl(a) == collection_to_jsonl(b));
}

TEST_CASE("derived maps are a pure function of the documents") {
    std::vector<DocumentRecord> docs{
        {"a", "10", "POL 1", "t", {"x"}},
        {"b", "10", "POL 2", "t", {"x"}},
        {"c", "11", "POL 1", "t", {"x"}},
    };
    const Collection c1 = Collection::from_documents(docs);
    const Collection c2 = Collection::from_documents(docs);
    CHECK(c1.boxes() == c2.boxes());
    CHECK(c1.folders() == c2.folders());
}

TEST_CASE("validate reports violations in deterministic order") {
    std::vector<DocumentRecord> docs{
        {"z", "5x", "POL 1", "t", {"p"}},   // bad box id
        {"a", "7", "POL 1", "t", {}},       // no pages
        {"a", "7", "POL 1", "t", {"p"}},    // duplicate doc id
    };
    const Collection c = Collection::from_documents(std::move(docs));
    const std::vector<Violation> v = validate_collection(c);
    REQUIRE(v.size() == 3);
    CHECK(v[0].subject == "a");
    CHECK(v[0].rule == "nonempty-pages");
    CHECK(v[1].subject == "a");
    CHECK(v[1].rule == "unique-doc-id");
    CHECK(v[2].subject == "z");
    CHECK(v[2].rule == "numeric-box-id");
    // Same input, same report.
    CHECK(validate_collection(c) == v);
}

}
