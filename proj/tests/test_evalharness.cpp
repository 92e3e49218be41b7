#include "doctest.h"

#include <cmath>
#include <set>

#include "boxfinder/evalharness.hpp"
#include "boxfinder/synthgen.hpp"

using namespace boxfinder;

namespace {

DocumentRecord doc(const char* id, const char* box, const char* title,
                   std::vector<std::string> pages) {
    return {id, box, "POL 1", title, std::move(pages)};
}

// Every document of a box carries identical pages, so representations do
// not depend on which documents the sampler picks.
Collection rank_two_collection() {
    std::vector<DocumentRecord> docs;
    docs.push_back(doc("a1", "1", "", {"x y y y"}));
    docs.push_back(doc("a2", "1", "x", {"x y y y"}));
    docs.push_back(doc("a3", "1", "x", {"x y y y"}));
    docs.push_back(doc("b1", "2", "", {"x x x z"}));
    docs.push_back(doc("b2", "2", "", {"x x x z"}));
    return Collection::from_documents(std::move(docs));
}

SynthParams eval_synth_params() {
    SynthParams p;
    p.n_boxes = 6;
    p.docs_per_box = 10;
    p.words_per_page = 60;
    p.vocab_size = 400;
    p.topic_terms_per_box = 40;
    p.homophily = 0.6;
    p.guide_codes_per_box = 2;
    p.seed = 400;
    return p;
}

} // namespace

TEST_SUITE("evalharness") {

TEST_CASE("config json round-trips every field") {
    ExperimentConfig cfg;
    cfg.samples_per_box = 7;
    cfg.page_limit.reset();
    cfg.query_mode = QueryMode::title;
    cfg.index_source = IndexSource::fusion;
    cfg.include_scope_notes = true;
    cfg.suppressed_countries = {"BRAZ", "PAR"};
    cfg.queries_per_trial = 42;
    cfg.repetitions = 9;
    cfg.bm25.k1 = 1.6;
    cfg.bm25.b = 0.4;
    cfg.fusion.discount = 10.0;
    cfg.master_seed = 123456789012345ULL;
    CHECK(config_from_json(config_to_json(cfg)) == cfg);

    const ExperimentConfig dflt;
    CHECK(config_from_json(config_to_json(dflt)) == dflt);
    CHECK(config_from_json("{}") == dflt);
}

TEST_CASE("config json rejects unknown fields and bad values") {
    CHECK_THROWS_AS(config_from_json("{\"sample_per_box\":3}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"samples_per_box\":0}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"page_limit\":0}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"page_limit\":\"some\"}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"query_mode\":\"qbex\"}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"index_source\":\"web\"}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"repetitions\":0}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"bm25\":{\"b\":1.5}}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"fusion\":{\"discount\":-2}}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json("[]"), ConfigError);
}

TEST_CASE("representation sampling is reproducible, distinct, and capped") {
    const SynthOutput synth = generate_corpus(eval_synth_params());
    const Collection& c = synth.collection;
    RngStream r1(5);
    RngStream r2(5);
    const auto a = select_representation_docs(c, "1901", 4, r1);
    const auto b = select_representation_docs(c, "1901", 4, r2);
    CHECK(a == b);
    CHECK(a.size() == 4);
    const std::set<std::string> distinct(a.begin(), a.end());
    CHECK(distinct.size() == a.size());
    const auto& box_docs = c.boxes().at("1901");
    for (const std::string& id : a) {
        CHECK(std::find(box_docs.begin(), box_docs.end(), id) != box_docs.end());
    }
    RngStream r3(5);
    CHECK(select_representation_docs(c, "1901", 99, r3).size() == box_docs.size());
    RngStream r4(5);
    CHECK_THROWS_AS(select_representation_docs(c, "9999", 1, r4), ConfigError);
}

TEST_CASE("query construction respects mode and page limit") {
    const DocumentRecord d =
        doc("q", "1", "Church Newspaper Calls", {"alpha beta", "gamma delta", "epsilon"});
    CHECK(make_query(d, QueryMode::title, 1) == TermSequence{"church", "newspap", "call"});
    CHECK(make_query(d, QueryMode::qbe, 1) == TermSequence{"alpha", "beta"});
    CHECK(make_query(d, QueryMode::qbe, 2) == TermSequence{"alpha", "beta", "gamma", "delta"});
    CHECK(make_query(d, QueryMode::qbe, 99) ==
          TermSequence{"alpha", "beta", "gamma", "delta", "epsilon"});
    CHECK(make_query(d, QueryMode::qbe, std::nullopt) ==
          TermSequence{"alpha", "beta", "gamma", "delta", "epsilon"});
    const DocumentRecord untitled = doc("u", "1", "", {"page"});
    CHECK_THROWS_AS(make_query(untitled, QueryMode::title, 1), ConfigError);
}

TEST_CASE("a constructed corpus pins down rank-two bookkeeping") {
    const Collection c = rank_two_collection();
    ExperimentConfig cfg;
    cfg.samples_per_box = 1;
    cfg.page_limit = 1;
    cfg.query_mode = QueryMode::title;
    cfg.queries_per_trial = 10;
    cfg.repetitions = 1;
    const TrialResult tr = run_trial(c, nullptr, cfg, 0);
    // Query "x" scores box 2 (tf 3) over box 1 (tf 1): the true box is
    // always second, one number away.
    CHECK(tr.top1 == 0);
    CHECK(tr.top2 == cfg.queries_per_trial);
    CHECK(tr.adjacent == cfg.queries_per_trial);
    REQUIRE(tr.queries.size() == cfg.queries_per_trial);
    for (const QueryOutcome& q : tr.queries) {
        CHECK(q.true_box == "1");  // only box 1 has titled documents
        REQUIRE(q.ranked.size() == 2);
        CHECK(q.ranked[0].box_id == "2");
        CHECK(q.ranked[1].box_id == "1");
    }
}

TEST_CASE("queries that match nothing earn no credit") {
    std::vector<DocumentRecord> docs;
    docs.push_back(doc("a1", "1", "", {"aaa"}));
    docs.push_back(doc("a2", "1", "", {"bbb"}));
    docs.push_back(doc("b1", "2", "", {"ccc"}));
    docs.push_back(doc("b2", "2", "", {"ddd"}));
    const Collection c = Collection::from_documents(std::move(docs));
    ExperimentConfig cfg;
    cfg.samples_per_box = 1;
    cfg.queries_per_trial = 20;
    cfg.repetitions = 1;
    const TrialResult tr = run_trial(c, nullptr, cfg, 0);
    CHECK(tr.top1 == 0);
    CHECK(tr.top2 == 0);
    CHECK(tr.adjacent == 0);
    for (const QueryOutcome& q : tr.queries) {
        CHECK(q.ranked.empty());
    }
}

TEST_CASE("disjoint topics make every query land on its own box") {
    SynthParams p = eval_synth_params();
    p.homophily = 1.0;
    p.disjoint_topics = true;
    const SynthOutput synth = generate_corpus(p);
    ExperimentConfig cfg;
    cfg.samples_per_box = 3;
    cfg.page_limit = 1;
    cfg.queries_per_trial = 50;
    cfg.repetitions = 1;
    const TrialResult tr = run_trial(synth.collection, nullptr, cfg, 0);
    CHECK(tr.top1 == cfg.queries_per_trial);
    CHECK(tr.top2 == cfg.queries_per_trial);
    CHECK(tr.adjacent == cfg.queries_per_trial);
}

TEST_CASE("trial invariants hold across sources and modes") {
    const SynthOutput synth = generate_corpus(eval_synth_params());
    for (const IndexSource source : {IndexSource::ocr, IndexSource::labels, IndexSource::fusion}) {
        for (const QueryMode mode : {QueryMode::qbe, QueryMode::title}) {
            ExperimentConfig cfg;
            cfg.samples_per_box = 2;
            cfg.page_limit = 1;
            cfg.query_mode = mode;
            cfg.index_source = source;
            cfg.queries_per_trial = 40;
            cfg.master_seed = 7;
            const TrialResult tr = run_trial(synth.collection, &synth.guide, cfg, 3);
            CHECK(tr.top1 <= tr.top2);
            CHECK(tr.top1 <= tr.adjacent);
            CHECK(tr.top2 <= cfg.queries_per_trial);
            REQUIRE(tr.queries.size() == cfg.queries_per_trial);
            for (const QueryOutcome& q : tr.queries) {
                const auto& reps = tr.representation_docs.at(q.true_box);
                CHECK(std::find(reps.begin(), reps.end(), q.query_doc) == reps.end());
            }
            for (const auto& [box, reps] : tr.representation_docs) {
                CHECK(reps.size() == std::min<size_t>(cfg.samples_per_box,
                                                      synth.collection.boxes().at(box).size()));
            }
        }
    }
}

TEST_CASE("trials replay exactly for a fixed seed and index") {
    const SynthOutput synth = generate_corpus(eval_synth_params());
    ExperimentConfig cfg;
    cfg.queries_per_trial = 30;
    cfg.master_seed = 99;
    const TrialResult a = run_trial(synth.collection, nullptr, cfg, 5);
    const TrialResult b = run_trial(synth.collection, nullptr, cfg, 5);
    CHECK(a.top1 == b.top1);
    CHECK(a.representation_docs == b.representation_docs);
    REQUIRE(a.queries.size() == b.queries.size());
    for (size_t i = 0; i < a.queries.size(); ++i) {
        CHECK(a.queries[i].true_box == b.queries[i].true_box);
        CHECK(a.queries[i].query_doc == b.queries[i].query_doc);
        CHECK(a.queries[i].ranked == b.queries[i].ranked);
    }
    const TrialResult other = run_trial(synth.collection, nullptr, cfg, 6);
    CHECK(a.representation_docs != other.representation_docs);
}

TEST_CASE("labels and fusion sources require a guide") {
    const SynthOutput synth = generate_corpus(eval_synth_params());
    ExperimentConfig cfg;
    cfg.index_source = IndexSource::labels;
    CHECK_THROWS_AS(run_trial(synth.collection, nullptr, cfg, 0), ConfigError);
    cfg.index_source = IndexSource::fusion;
    CHECK_THROWS_AS(run_trial(synth.collection, nullptr, cfg, 0), ConfigError);
}

TEST_CASE("a trial with no queryable documents is a configuration error") {
    std::vector<DocumentRecord> docs;
    docs.push_back(doc("a1", "1", "", {"x"}));
    docs.push_back(doc("b1", "2", "", {"y"}));
    const Collection c = Collection::from_documents(std::move(docs));
    ExperimentConfig cfg;
    cfg.samples_per_box = 1;
    CHECK_THROWS_AS(run_trial(c, nullptr, cfg, 0), ConfigError);

    // documents exist but none has a title
    const Collection c2 = rank_two_collection();
    ExperimentConfig title_cfg;
    title_cfg.samples_per_box = 3;
    title_cfg.query_mode = QueryMode::title;
    CHECK_THROWS_AS(run_trial(c2, nullptr, title_cfg, 0), ConfigError);
}

TEST_CASE("experiment aggregates trials into percent summaries") {
    const Collection c = rank_two_collection();
    ExperimentConfig cfg;
    cfg.samples_per_box = 1;
    cfg.query_mode = QueryMode::title;
    cfg.queries_per_trial = 10;
    cfg.repetitions = 4;
    const MetricsReport r = run_experiment(c, nullptr, cfg);
    CHECK(r.boxes == 2);
    CHECK(r.documents == 5);
    CHECK(r.top1.mean == 0.0);
    CHECK(r.top2.mean == 100.0);
    CHECK(r.adjacent.mean == 100.0);
    CHECK(r.top1.stddev == 0.0);
    CHECK(r.top2.stddev == 0.0);
    REQUIRE(r.trial_counts.size() == 4);
    for (const auto& t : r.trial_counts) {
        CHECK(t[0] == 0);
        CHECK(t[1] == 10);
        CHECK(t[2] == 10);
    }
}

TEST_CASE("a single repetition reports zero spread") {
    const SynthOutput synth = generate_corpus(eval_synth_params());
    ExperimentConfig cfg;
    cfg.queries_per_trial = 25;
    cfg.repetitions = 1;
    const MetricsReport r = run_experiment(synth.collection, nullptr, cfg);
    CHECK(r.top1.stddev == 0.0);
    CHECK(r.trial_counts.size() == 1);
    CHECK(r.top1.mean == doctest::Approx(100.0 * r.trial_counts[0][0] / 25.0));
}

TEST_CASE("thread count cannot change the report") {
    const SynthOutput synth = generate_corpus(eval_synth_params());
    ExperimentConfig cfg;
    cfg.queries_per_trial = 20;
    cfg.repetitions = 6;
    cfg.master_seed = 31;
    const MetricsReport serial = run_experiment(synth.collection, nullptr, cfg, 1);
    const MetricsReport parallel = run_experiment(synth.collection, nullptr, cfg, 4);
    CHECK(report_to_json(serial) == report_to_json(parallel));
}

TEST_CASE("more repetitions tighten the spread of the mean") {
    // a corpus hard enough that per-trial accuracy actually varies
    SynthParams p = eval_synth_params();
    p.words_per_page = 12;
    p.homophily = 0.25;
    const SynthOutput synth = generate_corpus(p);
    // dispersion of independent experiment means at 2 vs 18 trials each;
    // nine times the repetitions should cut the spread to about a third
    const auto spread_of_means = [&](uint32_t reps) {
        std::vector<double> means;
        for (uint64_t seed = 1000; seed < 1012; ++seed) {
            ExperimentConfig cfg;
            cfg.queries_per_trial = 20;
            cfg.repetitions = reps;
            cfg.master_seed = seed;
            means.push_back(run_experiment(synth.collection, nullptr, cfg, 4).top1.mean);
        }
        double sum = 0.0;
        for (const double m : means) sum += m;
        const double center = sum / means.size();
        double ss = 0.0;
        for (const double m : means) ss += (m - center) * (m - center);
        return std::sqrt(ss / (means.size() - 1));
    };
    const double wide = spread_of_means(2);
    const double tight = spread_of_means(18);
    CHECK(wide > 0.0);
    CHECK(tight < wide);
}

TEST_CASE("report json carries config, metrics, and per-trial counts") {
    const Collection c = rank_two_collection();
    ExperimentConfig cfg;
    cfg.samples_per_box = 1;
    cfg.query_mode = QueryMode::title;
    cfg.queries_per_trial = 5;
    cfg.repetitions = 2;
    const MetricsReport r = run_experiment(c, nullptr, cfg);
    const std::string json = report_to_json(r);
    CHECK(json.find("\"query_mode\": \"title\"") != std::string::npos);
    CHECK(json.find("\"metrics\"") != std::string::npos);
    CHECK(json.find("\"trials\"") != std::string::npos);
    const std::string table = report_table(r);
    CHECK(table.find("top-1") != std::string::npos);
    CHECK(table.find("100.00") != std::string::npos);
}

}
