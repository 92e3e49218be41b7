#include "boxfinder/evalharness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace boxfinder {
namespace {

using ojson = nlohmann::ordered_json;

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.samples_per_box == 0) {
        throw ConfigError("samples_per_box must be >= 1");
    }
    if (cfg.page_limit && *cfg.page_limit == 0) {
        throw ConfigError("page_limit must be >= 1 when set");
    }
    if (cfg.queries_per_trial == 0) {
        throw ConfigError("queries_per_trial must be >= 1");
    }
    if (cfg.repetitions == 0) {
        throw ConfigError("repetitions must be >= 1");
    }
    if (!(cfg.bm25.k1 >= 0.0)) {
        throw ConfigError("bm25 k1 must be >= 0");
    }
    if (!(cfg.bm25.b >= 0.0 && cfg.bm25.b <= 1.0)) {
        throw ConfigError("bm25 b must be in [0, 1]");
    }
    if (!(cfg.fusion.discount >= 0.0)) {
        throw ConfigError("fusion discount must be >= 0");
    }
}

uint32_t pages_to_use(const DocumentRecord& doc, std::optional<uint32_t> page_limit) {
    const size_t n = doc.pages.size();
    return static_cast<uint32_t>(page_limit ? std::min<size_t>(*page_limit, n) : n);
}

} // namespace

const char* to_string(QueryMode m) {
    return m == QueryMode::title ? "title" : "qbe";
}

const char* to_string(IndexSource s) {
    switch (s) {
        case IndexSource::ocr: return "ocr";
        case IndexSource::labels: return "labels";
        case IndexSource::fusion: return "fusion";
    }
    return "ocr";
}

QueryMode query_mode_from_string(const std::string& s) {
    if (s == "title") return QueryMode::title;
    if (s == "qbe") return QueryMode::qbe;
    throw ConfigError("unknown query mode '" + s + "' (expected title or qbe)");
}

IndexSource index_source_from_string(const std::string& s) {
    if (s == "ocr") return IndexSource::ocr;
    if (s == "labels") return IndexSource::labels;
    if (s == "fusion") return IndexSource::fusion;
    throw ConfigError("unknown index source '" + s + "' (expected ocr, labels, or fusion)");
}

std::string config_to_json(const ExperimentConfig& cfg) {
    ojson doc;
    doc["samples_per_box"] = cfg.samples_per_box;
    if (cfg.page_limit) {
        doc["page_limit"] = *cfg.page_limit;
    } else {
        doc["page_limit"] = "all";
    }
    doc["query_mode"] = to_string(cfg.query_mode);
    doc["index_source"] = to_string(cfg.index_source);
    doc["include_scope_notes"] = cfg.include_scope_notes;
    doc["suppressed_countries"] = cfg.suppressed_countries;
    doc["queries_per_trial"] = cfg.queries_per_trial;
    doc["repetitions"] = cfg.repetitions;
    doc["bm25"]["k1"] = cfg.bm25.k1;
    doc["bm25"]["b"] = cfg.bm25.b;
    doc["fusion"]["discount"] = cfg.fusion.discount;
    doc["master_seed"] = cfg.master_seed;
    return doc.dump(1);
}

ExperimentConfig config_from_json(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known{
        "samples_per_box", "page_limit",        "query_mode", "index_source",
        "include_scope_notes", "suppressed_countries", "queries_per_trial",
        "repetitions",     "bm25",              "fusion",     "master_seed",
    };
    for (const auto& [key, value] : doc.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    ExperimentConfig cfg;
    try {
        if (doc.contains("samples_per_box")) cfg.samples_per_box = doc["samples_per_box"].get<uint32_t>();
        if (doc.contains("page_limit")) {
            const auto& pl = doc["page_limit"];
            if (pl.is_string()) {
                if (pl.get<std::string>() != "all") {
                    throw ConfigError("page_limit must be a positive integer or \"all\"");
                }
                cfg.page_limit.reset();
            } else {
                cfg.page_limit = pl.get<uint32_t>();
            }
        }
        if (doc.contains("query_mode")) {
            cfg.query_mode = query_mode_from_string(doc["query_mode"].get<std::string>());
        }
        if (doc.contains("index_source")) {
            cfg.index_source = index_source_from_string(doc["index_source"].get<std::string>());
        }
        if (doc.contains("include_scope_notes")) {
            cfg.include_scope_notes = doc["include_scope_notes"].get<bool>();
        }
        if (doc.contains("suppressed_countries")) {
            cfg.suppressed_countries.clear();
            for (const auto& s : doc["suppressed_countries"]) {
                cfg.suppressed_countries.insert(s.get<std::string>());
            }
        }
        if (doc.contains("queries_per_trial")) cfg.queries_per_trial = doc["queries_per_trial"].get<uint32_t>();
        if (doc.contains("repetitions")) cfg.repetitions = doc["repetitions"].get<uint32_t>();
        if (doc.contains("bm25")) {
            if (doc["bm25"].contains("k1")) cfg.bm25.k1 = doc["bm25"]["k1"].get<double>();
            if (doc["bm25"].contains("b")) cfg.bm25.b = doc["bm25"]["b"].get<double>();
        }
        if (doc.contains("fusion") && doc["fusion"].contains("discount")) {
            cfg.fusion.discount = doc["fusion"]["discount"].get<double>();
        }
        if (doc.contains("master_seed")) cfg.master_seed = doc["master_seed"].get<uint64_t>();
    } catch (const ojson::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

std::vector<std::string> select_representation_docs(const Collection& c, const std::string& box_id,
                                                    uint32_t n, RngStream& rng) {
    auto it = c.boxes().find(box_id);
    if (it == c.boxes().end()) {
        throw ConfigError("unknown box '" + box_id + "'");
    }
    const std::vector<std::string>& docs = it->second;
    const std::vector<uint32_t> picks =
        rng.sample_without_replacement(static_cast<uint32_t>(docs.size()), n);
    std::vector<std::string> out;
    out.reserve(picks.size());
    for (uint32_t i : picks) out.push_back(docs[i]);
    return out;
}

TermSequence make_query(const DocumentRecord& doc, QueryMode mode,
                        std::optional<uint32_t> page_limit) {
    if (mode == QueryMode::title) {
        if (doc.title.empty()) {
            throw ConfigError("document '" + doc.doc_id + "' has no title to query with");
        }
        return analyze(doc.title);
    }
    const uint32_t used = pages_to_use(doc, page_limit);
    TermSequence out;
    for (uint32_t i = 0; i < used; ++i) {
        TermSequence page = analyze(doc.pages[i]);
        out.insert(out.end(), std::make_move_iterator(page.begin()),
                   std::make_move_iterator(page.end()));
    }
    return out;
}

TrialResult run_trial(const Collection& c, const ClassificationGuide* guide,
                      const ExperimentConfig& cfg, uint32_t trial_index) {
    validate_config(cfg);
    const bool wants_labels =
        cfg.index_source == IndexSource::labels || cfg.index_source == IndexSource::fusion;
    const bool wants_ocr = cfg.index_source != IndexSource::labels;
    if (wants_labels && guide == nullptr) {
        throw ConfigError(std::string("index source '") + to_string(cfg.index_source) +
                          "' requires a classification guide");
    }
    if (c.documents().empty()) {
        throw ConfigError("collection has no documents");
    }

    RngStream rep_rng = RngStream::derive(cfg.master_seed, {trial_index, 1});
    RngStream query_rng = RngStream::derive(cfg.master_seed, {trial_index, 2});

    const std::vector<std::string> box_ids = c.sorted_box_ids();
    TrialResult tr;
    // Representations are sampled for every index source, labels
    // included, so the query pool for a given seed does not depend on
    // which index answers the queries.
    for (const std::string& box : box_ids) {
        tr.representation_docs[box] =
            select_representation_docs(c, box, cfg.samples_per_box, rep_rng);
    }

    std::optional<BoxIndex> ocr_index;
    std::optional<BoxIndex> label_index;
    if (wants_ocr) {
        std::vector<BoxRepresentation> reps;
        reps.reserve(box_ids.size());
        for (const std::string& box : box_ids) {
            BoxRepresentation rep;
            rep.box_id = box;
            for (const std::string& doc_id : tr.representation_docs[box]) {
                const DocumentRecord& doc = c.document(doc_id);
                const uint32_t used = pages_to_use(doc, cfg.page_limit);
                for (uint32_t i = 0; i < used; ++i) {
                    TermSequence page = analyze(doc.pages[i]);
                    rep.terms.insert(rep.terms.end(), std::make_move_iterator(page.begin()),
                                     std::make_move_iterator(page.end()));
                }
                rep.provenance.push_back({doc_id, used});
            }
            reps.push_back(std::move(rep));
        }
        try {
            ocr_index = BoxIndex::build(std::move(reps), cfg.bm25);
        } catch (const IndexError& e) {
            throw ConfigError(std::string("cannot build text index: ") + e.what());
        }
    }
    if (wants_labels) {
        const LabelExpansionOptions opts{cfg.include_scope_notes, cfg.suppressed_countries};
        std::vector<BoxRepresentation> reps;
        reps.reserve(box_ids.size());
        for (const std::string& box : box_ids) {
            const BoxLabelText blt = box_label_text(c.folders().at(box), *guide, opts);
            BoxRepresentation rep;
            rep.box_id = box;
            rep.terms = analyze(blt.text);
            reps.push_back(std::move(rep));
        }
        try {
            label_index = BoxIndex::build(std::move(reps), cfg.bm25);
        } catch (const IndexError& e) {
            throw ConfigError(std::string("cannot build label index: ") + e.what());
        }
    }

    // Boxes with at least one queryable document outside the
    // representation sample.
    std::vector<std::pair<std::string, std::vector<std::string>>> eligible;
    for (const std::string& box : box_ids) {
        const std::vector<std::string>& sampled = tr.representation_docs[box];
        const std::set<std::string> used(sampled.begin(), sampled.end());
        std::vector<std::string> pool;
        for (const std::string& doc_id : c.boxes().at(box)) {
            if (used.count(doc_id)) continue;
            if (cfg.query_mode == QueryMode::title && c.document(doc_id).title.empty()) continue;
            pool.push_back(doc_id);
        }
        if (!pool.empty()) eligible.emplace_back(box, std::move(pool));
    }
    if (eligible.empty()) {
        throw ConfigError("no box has an eligible query document");
    }

    for (uint32_t q = 0; q < cfg.queries_per_trial; ++q) {
        const auto& [true_box, pool] = eligible[query_rng.bounded(eligible.size())];
        const std::string& doc_id = pool[query_rng.bounded(pool.size())];
        const TermSequence query = make_query(c.document(doc_id), cfg.query_mode, cfg.page_limit);
        RankedList ranked;
        switch (cfg.index_source) {
            case IndexSource::ocr:
                ranked = ocr_index->rank(query);
                break;
            case IndexSource::labels:
                ranked = label_index->rank(query);
                break;
            case IndexSource::fusion:
                ranked = rrf({ocr_index->rank(query), label_index->rank(query)}, cfg.fusion);
                break;
        }
        if (!ranked.empty()) {
            const bool hit1 = ranked[0].box_id == true_box;
            if (hit1) ++tr.top1;
            if (hit1 || (ranked.size() > 1 && ranked[1].box_id == true_box)) ++tr.top2;
            long long top_n = 0;
            long long true_n = 0;
            if (try_box_number(ranked[0].box_id, top_n) && try_box_number(true_box, true_n)) {
                if (top_n - true_n <= 1 && true_n - top_n <= 1) ++tr.adjacent;
            } else if (hit1) {
                ++tr.adjacent;
            }
        }
        tr.queries.push_back({true_box, doc_id, std::move(ranked)});
    }
    return tr;
}

MetricsReport run_experiment(const Collection& c, const ClassificationGuide* guide,
                             const ExperimentConfig& cfg, uint32_t threads) {
    validate_config(cfg);
    const uint32_t reps = cfg.repetitions;
    std::vector<std::array<uint32_t, 3>> counts(reps);
    if (threads <= 1 || reps == 1) {
        for (uint32_t t = 0; t < reps; ++t) {
            const TrialResult tr = run_trial(c, guide, cfg, t);
            counts[t] = {tr.top1, tr.top2, tr.adjacent};
        }
    } else {
        std::atomic<uint32_t> next{0};
        std::mutex err_mutex;
        std::exception_ptr first_error;
        auto worker = [&] {
            while (true) {
                const uint32_t t = next.fetch_add(1);
                if (t >= reps) return;
                try {
                    const TrialResult tr = run_trial(c, guide, cfg, t);
                    counts[t] = {tr.top1, tr.top2, tr.adjacent};
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        const uint32_t n_workers = std::min(threads, reps);
        pool.reserve(n_workers);
        for (uint32_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    MetricsReport report;
    report.config = cfg;
    report.boxes = static_cast<uint32_t>(c.boxes().size());
    report.documents = static_cast<uint32_t>(c.documents().size());
    report.trial_counts = counts;
    auto summarize = [&](size_t metric) {
        MetricSummary s;
        double sum = 0.0;
        for (uint32_t t = 0; t < reps; ++t) {
            sum += 100.0 * counts[t][metric] / cfg.queries_per_trial;
        }
        s.mean = sum / reps;
        if (reps > 1) {
            double ss = 0.0;
            for (uint32_t t = 0; t < reps; ++t) {
                const double x = 100.0 * counts[t][metric] / cfg.queries_per_trial;
                ss += (x - s.mean) * (x - s.mean);
            }
            s.stddev = std::sqrt(ss / (reps - 1));
        }
        return s;
    };
    report.top1 = summarize(0);
    report.top2 = summarize(1);
    report.adjacent = summarize(2);
    return report;
}

std::string report_to_json(const MetricsReport& r) {
    ojson doc;
    doc["config"] = ojson::parse(config_to_json(r.config));
    doc["collection"]["boxes"] = r.boxes;
    doc["collection"]["documents"] = r.documents;
    auto metric = [](const MetricSummary& m) {
        ojson j;
        j["mean"] = m.mean;
        j["stddev"] = m.stddev;
        return j;
    };
    doc["metrics"]["top1"] = metric(r.top1);
    doc["metrics"]["top2"] = metric(r.top2);
    doc["metrics"]["adjacent"] = metric(r.adjacent);
    ojson trials = ojson::array();
    for (const auto& t : r.trial_counts) {
        trials.push_back({t[0], t[1], t[2]});
    }
    doc["trials"] = std::move(trials);
    return doc.dump(1) + "\n";
}

std::string report_table(const MetricsReport& r) {
    char buf[256];
    std::string out;
    out += "metric     mean  stddev\n";
    auto row = [&](const char* name, const MetricSummary& m) {
        std::snprintf(buf, sizeof(buf), "%-9s %6.2f %7.2f\n", name, m.mean, m.stddev);
        out += buf;
    };
    row("top-1", r.top1);
    row("top-2", r.top2);
    row("adjacent", r.adjacent);
    return out;
}

} // namespace boxfinder
