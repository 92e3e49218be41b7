#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boxfinder/boxindex.hpp"
#include "boxfinder/corpus.hpp"
#include "boxfinder/evalharness.hpp"
#include "boxfinder/fusion.hpp"
#include "boxfinder/labelterms.hpp"
#include "boxfinder/rng.hpp"
#include "boxfinder/synthgen.hpp"
#include "boxfinder/textproc.hpp"

using namespace boxfinder;
using ojson = nlohmann::ordered_json;

namespace {

struct MissingFile {
    std::string path;
};

void require_file(const std::string& path) {
    if (!std::filesystem::exists(path)) throw MissingFile{path};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
    }
    return out;
}

// "all" or a positive integer
std::optional<uint32_t> parse_limit(const std::string& text, const char* what) {
    if (text == "all") return std::nullopt;
    try {
        size_t pos = 0;
        const unsigned long v = std::stoul(text, &pos);
        if (pos == text.size() && v >= 1 && v <= 0xffffffffUL) {
            return static_cast<uint32_t>(v);
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string(what) + " must be a positive integer or \"all\"");
}

// comma-separated abbreviations; "none" clears the default
std::set<std::string> parse_suppress(const std::string& text) {
    std::set<std::string> out;
    if (text == "none") return out;
    std::string cur;
    for (const char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.insert(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

ojson limit_to_json(const std::optional<uint32_t>& limit) {
    if (limit) return *limit;
    return "all";
}

void echo_config(const ojson& resolved) {
    std::cerr << "config: " << resolved.dump() << "\n";
}

void write_ranking(const RankedList& ranked, const std::string& path) {
    ojson doc;
    doc["format"] = "boxfinder-ranking";
    doc["version"] = 1;
    ojson entries = ojson::array();
    for (const RankedEntry& e : ranked) {
        ojson j;
        j["box_id"] = e.box_id;
        j["score"] = e.score;
        entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(1) << "\n";
}

RankedList read_ranking(const std::string& path) {
    require_file(path);
    ojson doc;
    try {
        doc = ojson::parse(slurp(path));
    } catch (const ojson::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("format", std::string()) != "boxfinder-ranking" ||
        doc.value("version", 0) != 1) {
        throw std::runtime_error(path + ": not a boxfinder-ranking file");
    }
    RankedList out;
    try {
        for (const auto& e : doc.at("entries")) {
            out.push_back({e.at("box_id").get<std::string>(), e.at("score").get<double>()});
        }
    } catch (const ojson::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return out;
}

void print_ranked(const RankedList& ranked, size_t top, const BoxIndex* index,
                  const TermSequence* query) {
    const size_t n = std::min(top, ranked.size());
    for (size_t i = 0; i < n; ++i) {
        std::printf("%2zu. box %-10s %12.6f\n", i + 1, ranked[i].box_id.c_str(), ranked[i].score);
        if (index && query) {
            for (const auto& [term, part] : index->explain(*query, ranked[i].box_id)) {
                std::printf("      %-24s %12.6f\n", term.c_str(), part);
            }
        }
    }
}

struct BuildIndexOpts {
    std::string collection;
    std::string out;
    std::string source = "ocr";
    std::string guide;
    std::string samples = "all";
    std::string pages = "all";
    uint64_t seed = 0;
    double k1 = BM25Params{}.k1;
    double b = BM25Params{}.b;
    bool scope_notes = false;
    std::string suppress = "BRAZ";
};

int run_ingest(const std::string& path) {
    echo_config({{"subcommand", "ingest"}, {"collection", path}});
    require_file(path);
    const Collection c = load_collection(path);
    const std::vector<Violation> violations = validate_collection(c);
    if (!violations.empty()) {
        for (const Violation& v : violations) {
            std::cerr << v.subject << ": " << v.rule << ": " << v.message << "\n";
        }
        return 1;
    }
    std::printf("OK, %zu boxes, %zu documents\n", c.boxes().size(), c.documents().size());
    return 0;
}

int run_build_index(const BuildIndexOpts& o) {
    const std::optional<uint32_t> samples = parse_limit(o.samples, "--samples");
    const std::optional<uint32_t> pages = parse_limit(o.pages, "--pages");
    const std::set<std::string> suppressed = parse_suppress(o.suppress);
    echo_config({{"subcommand", "build-index"},
                 {"collection", o.collection},
                 {"out", o.out},
                 {"source", o.source},
                 {"guide", o.guide},
                 {"samples", limit_to_json(samples)},
                 {"pages", limit_to_json(pages)},
                 {"seed", o.seed},
                 {"bm25", {{"k1", o.k1}, {"b", o.b}}},
                 {"include_scope_notes", o.scope_notes},
                 {"suppressed_countries", suppressed}});
    require_file(o.collection);
    const Collection c = load_collection(o.collection);
    const std::vector<std::string> box_ids = c.sorted_box_ids();
    std::vector<BoxRepresentation> reps;
    reps.reserve(box_ids.size());
    if (o.source == "ocr") {
        RngStream rng = RngStream::derive(o.seed, {1});
        for (const std::string& box : box_ids) {
            const std::vector<std::string> chosen =
                samples ? select_representation_docs(c, box, *samples, rng) : c.boxes().at(box);
            BoxRepresentation rep;
            rep.box_id = box;
            for (const std::string& doc_id : chosen) {
                const DocumentRecord& d = c.document(doc_id);
                const uint32_t used = static_cast<uint32_t>(
                    pages ? std::min<size_t>(*pages, d.pages.size()) : d.pages.size());
                for (uint32_t i = 0; i < used; ++i) {
                    TermSequence page = analyze(d.pages[i]);
                    rep.terms.insert(rep.terms.end(), std::make_move_iterator(page.begin()),
                                     std::make_move_iterator(page.end()));
                }
                rep.provenance.push_back({doc_id, used});
            }
            reps.push_back(std::move(rep));
        }
    } else {
        if (o.guide.empty()) throw ConfigError("--source labels requires --guide");
        require_file(o.guide);
        const ClassificationGuide guide = load_guide(o.guide);
        const LabelExpansionOptions opts{o.scope_notes, suppressed};
        for (const std::string& box : box_ids) {
            const BoxLabelText blt = box_label_text(c.folders().at(box), guide, opts);
            for (const std::string& w : blt.warnings) {
                std::cerr << "warning: box " << box << ": " << w << "\n";
            }
            reps.push_back({box, analyze(blt.text), {}});
        }
    }
    const BoxIndex index = BoxIndex::build(std::move(reps), {o.k1, o.b});
    index.save(o.out);
    std::printf("wrote %s: %zu boxes, avg length %.1f\n", o.out.c_str(), index.n_boxes(),
                index.avg_length());
    return 0;
}

struct SearchOpts {
    std::string index;
    std::vector<std::string> query_words;
    std::string example_doc;
    std::string collection;
    std::string pages = "all";
    size_t top = 10;
    bool explain = false;
    std::string output;
};

int run_search(const SearchOpts& o) {
    const std::optional<uint32_t> pages = parse_limit(o.pages, "--pages");
    const std::string query_text = join_words(o.query_words);
    echo_config({{"subcommand", "search"},
                 {"index", o.index},
                 {"query", query_text},
                 {"example_doc", o.example_doc},
                 {"collection", o.collection},
                 {"pages", limit_to_json(pages)},
                 {"top", o.top},
                 {"explain", o.explain},
                 {"output", o.output}});
    if (o.example_doc.empty() && o.query_words.empty()) {
        throw ConfigError("give a query string or --example-doc");
    }
    if (!o.example_doc.empty() && !o.query_words.empty()) {
        throw ConfigError("give either a query string or --example-doc, not both");
    }
    require_file(o.index);
    const BoxIndex index = BoxIndex::load(o.index);
    TermSequence query;
    if (!o.example_doc.empty()) {
        if (o.collection.empty()) throw ConfigError("--example-doc requires --collection");
        require_file(o.collection);
        const Collection c = load_collection(o.collection);
        if (!c.has_document(o.example_doc)) {
            throw ConfigError("unknown document '" + o.example_doc + "'");
        }
        query = make_query(c.document(o.example_doc), QueryMode::qbe, pages);
    } else {
        query = analyze(query_text);
    }
    if (query.empty()) {
        std::cerr << "no term matched\n";
        if (!o.output.empty()) write_ranking({}, o.output);
        return 0;
    }
    const RankedList ranked = index.rank(query);
    if (ranked.empty()) {
        std::cerr << "no box matched\n";
    } else {
        print_ranked(ranked, o.top, o.explain ? &index : nullptr, &query);
    }
    if (!o.output.empty()) write_ranking(ranked, o.output);
    return 0;
}

int run_expand_label(const std::string& guide_path, const std::vector<std::string>& words,
                     bool scope_notes, const std::string& suppress) {
    const std::string label = join_words(words);
    const std::set<std::string> suppressed = parse_suppress(suppress);
    echo_config({{"subcommand", "expand-label"},
                 {"guide", guide_path},
                 {"label", label},
                 {"include_scope_notes", scope_notes},
                 {"suppressed_countries", suppressed}});
    require_file(guide_path);
    const ClassificationGuide guide = load_guide(guide_path);
    const LabelExpansionOptions opts{scope_notes, suppressed};
    std::vector<std::string> warnings;
    const std::string text = expand_label(parse_folder_label(label), guide, opts, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << text << "\n";
    return 0;
}

int run_fuse(const std::vector<std::string>& files, double discount, size_t top,
             const std::string& output) {
    echo_config({{"subcommand", "fuse"},
                 {"files", files},
                 {"discount", discount},
                 {"top", top},
                 {"output", output}});
    if (files.size() < 2) throw ConfigError("fuse needs at least two ranking files");
    std::vector<RankedList> lists;
    lists.reserve(files.size());
    for (const std::string& f : files) lists.push_back(read_ranking(f));
    const RankedList fused = rrf(lists, {discount});
    print_ranked(fused, top, nullptr, nullptr);
    if (!output.empty()) write_ranking(fused, output);
    return 0;
}

struct EvaluateOpts {
    std::string collection;
    std::string guide;
    std::string config_path;
    std::string mode;
    std::string source;
    uint32_t samples = 0;
    std::string pages;
    bool scope_notes = false;
    std::string suppress;
    uint32_t queries = 0;
    uint32_t repetitions = 0;
    double k1 = 0.0;
    double b = 0.0;
    double discount = 0.0;
    uint64_t seed = 0;
    uint32_t threads = 1;
    std::string out;
    bool sweep = false;
    std::vector<uint32_t> sweep_samples = {1, 2, 3, 4, 6, 8, 10};
    std::vector<std::string> sweep_pages = {"1", "2", "3", "4", "all"};
};

int run_evaluate(const EvaluateOpts& o, const CLI::App& sub) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        require_file(o.config_path);
        cfg = config_from_json(slurp(o.config_path));
    }
    if (sub.count("--mode")) cfg.query_mode = query_mode_from_string(o.mode);
    if (sub.count("--source")) cfg.index_source = index_source_from_string(o.source);
    if (sub.count("--samples")) cfg.samples_per_box = o.samples;
    if (sub.count("--pages")) cfg.page_limit = parse_limit(o.pages, "--pages");
    if (sub.count("--scope-notes")) cfg.include_scope_notes = o.scope_notes;
    if (sub.count("--suppress")) cfg.suppressed_countries = parse_suppress(o.suppress);
    if (sub.count("--queries")) cfg.queries_per_trial = o.queries;
    if (sub.count("--repetitions")) cfg.repetitions = o.repetitions;
    if (sub.count("--k1")) cfg.bm25.k1 = o.k1;
    if (sub.count("--b")) cfg.bm25.b = o.b;
    if (sub.count("--discount")) cfg.fusion.discount = o.discount;
    if (sub.count("--seed")) cfg.master_seed = o.seed;
    const uint32_t threads = std::max(1u, o.threads);

    ojson resolved = ojson::parse(config_to_json(cfg));
    resolved["subcommand"] = "evaluate";
    resolved["collection"] = o.collection;
    resolved["guide"] = o.guide;
    resolved["sweep"] = o.sweep;
    echo_config(resolved);

    require_file(o.collection);
    const Collection c = load_collection(o.collection);
    std::optional<ClassificationGuide> guide;
    if (!o.guide.empty()) {
        require_file(o.guide);
        guide = load_guide(o.guide);
    }
    const ClassificationGuide* guide_ptr = guide ? &*guide : nullptr;

    if (!o.sweep) {
        const MetricsReport r = run_experiment(c, guide_ptr, cfg, threads);
        std::printf("seed %llu, source %s, mode %s, %u boxes, %u documents, %u trials x %u queries\n",
                    static_cast<unsigned long long>(cfg.master_seed), to_string(cfg.index_source),
                    to_string(cfg.query_mode), r.boxes, r.documents, cfg.repetitions,
                    cfg.queries_per_trial);
        std::fputs(report_table(r).c_str(), stdout);
        if (!o.out.empty()) {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + o.out);
            f << report_to_json(r);
        }
        return 0;
    }

    // grid sweep: rows are sample counts, columns are page limits
    std::vector<std::optional<uint32_t>> page_limits;
    for (const std::string& p : o.sweep_pages) page_limits.push_back(parse_limit(p, "--sweep-pages"));
    std::vector<MetricsReport> cells;
    for (const uint32_t s : o.sweep_samples) {
        for (const std::optional<uint32_t>& pl : page_limits) {
            ExperimentConfig cell_cfg = cfg;
            cell_cfg.samples_per_box = s;
            cell_cfg.page_limit = pl;
            std::cerr << "sweep: samples=" << s << " pages=" << limit_to_json(pl).dump() << "\n";
            cells.push_back(run_experiment(c, guide_ptr, cell_cfg, threads));
        }
    }
    std::printf("seed %llu, source %s, mode %s, %u trials x %u queries per cell\n",
                static_cast<unsigned long long>(cfg.master_seed), to_string(cfg.index_source),
                to_string(cfg.query_mode), cfg.repetitions, cfg.queries_per_trial);
    const auto grid = [&](const char* name, auto pick) {
        std::printf("\n%s, mean over trials\n%-10s", name, "samples");
        for (const std::string& p : o.sweep_pages) std::printf(" %9s", ("pages=" + p).c_str());
        std::printf("\n");
        size_t idx = 0;
        for (const uint32_t s : o.sweep_samples) {
            std::printf("%-10u", s);
            for (size_t j = 0; j < page_limits.size(); ++j) {
                std::printf(" %9.2f", pick(cells[idx++]));
            }
            std::printf("\n");
        }
    };
    grid("top-1", [](const MetricsReport& r) { return r.top1.mean; });
    grid("top-2", [](const MetricsReport& r) { return r.top2.mean; });
    grid("adjacent", [](const MetricsReport& r) { return r.adjacent.mean; });
    if (!o.out.empty()) {
        ojson doc;
        doc["format"] = "boxfinder-sweep";
        doc["version"] = 1;
        doc["samples"] = o.sweep_samples;
        ojson pages = ojson::array();
        for (const std::optional<uint32_t>& pl : page_limits) pages.push_back(limit_to_json(pl));
        doc["pages"] = std::move(pages);
        ojson cell_array = ojson::array();
        for (const MetricsReport& r : cells) cell_array.push_back(ojson::parse(report_to_json(r)));
        doc["cells"] = std::move(cell_array);
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + o.out);
        f << doc.dump(1) << "\n";
    }
    return 0;
}

struct SynthOpts {
    std::string out;
    std::string guide_out;
    SynthParams params;
};

int run_synth(const SynthOpts& o) {
    const SynthParams& p = o.params;
    echo_config({{"subcommand", "synth"},
                 {"out", o.out},
                 {"guide_out", o.guide_out},
                 {"n_boxes", p.n_boxes},
                 {"docs_per_box", p.docs_per_box},
                 {"pages_per_doc", {p.pages_per_doc_min, p.pages_per_doc_max}},
                 {"words_per_page", p.words_per_page},
                 {"title_words", {p.title_words_min, p.title_words_max}},
                 {"vocab_size", p.vocab_size},
                 {"topic_terms_per_box", p.topic_terms_per_box},
                 {"homophily", p.homophily},
                 {"disjoint_topics", p.disjoint_topics},
                 {"guide_codes_per_box", p.guide_codes_per_box},
                 {"seed", p.seed},
                 {"first_box_number", p.first_box_number}});
    const SynthOutput synth = generate_corpus(p);
    save_collection(synth.collection, o.out);
    save_guide(synth.guide, o.guide_out);
    std::printf("wrote %zu documents in %zu boxes to %s, guide to %s\n",
                synth.collection.documents().size(), synth.collection.boxes().size(),
                o.out.c_str(), o.guide_out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BM25 retrieval over boxes of digitized archival documents"};
    app.require_subcommand(1);

    std::string ingest_path;
    CLI::App* ingest = app.add_subcommand("ingest", "load and validate a collection file");
    ingest->add_option("collection", ingest_path, "JSONL collection file")->required();

    BuildIndexOpts bi;
    CLI::App* build = app.add_subcommand("build-index", "build and save a box index");
    build->add_option("--collection", bi.collection, "JSONL collection file")->required();
    build->add_option("--out", bi.out, "index file to write")->required();
    build->add_option("--source", bi.source, "what the box text comes from")
        ->check(CLI::IsMember({"ocr", "labels"}));
    build->add_option("--guide", bi.guide, "classification guide file (labels source)");
    build->add_option("--samples", bi.samples, "documents sampled per box, or \"all\"");
    build->add_option("--pages", bi.pages, "pages read per document, or \"all\"");
    build->add_option("--seed", bi.seed, "sampling seed");
    build->add_option("--k1", bi.k1, "BM25 k1");
    build->add_option("--b", bi.b, "BM25 b");
    build->add_flag("--scope-notes", bi.scope_notes, "include guide scope notes");
    build->add_option("--suppress", bi.suppress,
                      "comma-separated country abbreviations to drop, or \"none\"");

    SearchOpts se;
    CLI::App* search = app.add_subcommand("search", "rank boxes for a query");
    search->add_option("--index", se.index, "index file")->required();
    search->add_option("query", se.query_words, "query words");
    search->add_option("--example-doc", se.example_doc, "query by example: a document id");
    search->add_option("--collection", se.collection, "collection file (example-doc mode)");
    search->add_option("--pages", se.pages, "pages of the example document to use, or \"all\"");
    search->add_option("--top", se.top, "entries to print");
    search->add_flag("--explain", se.explain, "print per-term score contributions");
    search->add_option("--output", se.output, "write the full ranking to this file");

    std::string el_guide;
    std::vector<std::string> el_words;
    bool el_scope_notes = false;
    std::string el_suppress = "BRAZ";
    CLI::App* expand = app.add_subcommand("expand-label", "print the expansion of a folder label");
    expand->add_option("--guide", el_guide, "classification guide file")->required();
    expand->add_option("label", el_words, "folder label, e.g. POL 12-6 BRAZ 01/01/1967")
        ->required();
    expand->add_flag("--scope-notes", el_scope_notes, "include guide scope notes");
    expand->add_option("--suppress", el_suppress,
                       "comma-separated country abbreviations to drop, or \"none\"");

    std::vector<std::string> fuse_files;
    double fuse_discount = FusionParams{}.discount;
    size_t fuse_top = 10;
    std::string fuse_output;
    CLI::App* fuse = app.add_subcommand("fuse", "fuse ranking files with reciprocal rank fusion");
    fuse->add_option("files", fuse_files, "two or more ranking files")->required();
    fuse->add_option("--discount", fuse_discount, "rank discount constant");
    fuse->add_option("--top", fuse_top, "entries to print");
    fuse->add_option("--output", fuse_output, "write the fused ranking to this file");

    EvaluateOpts ev;
    CLI::App* evaluate = app.add_subcommand("evaluate", "run the randomized retrieval experiment");
    evaluate->add_option("--collection", ev.collection, "JSONL collection file")->required();
    evaluate->add_option("--guide", ev.guide, "classification guide file");
    evaluate->add_option("--config", ev.config_path, "experiment config JSON file");
    evaluate->add_option("--mode", ev.mode, "query mode")->check(CLI::IsMember({"title", "qbe"}));
    evaluate->add_option("--source", ev.source, "index source")
        ->check(CLI::IsMember({"ocr", "labels", "fusion"}));
    evaluate->add_option("--samples", ev.samples, "documents sampled per box");
    evaluate->add_option("--pages", ev.pages, "pages per document, or \"all\"");
    evaluate->add_flag("--scope-notes", ev.scope_notes, "include guide scope notes");
    evaluate->add_option("--suppress", ev.suppress,
                         "comma-separated country abbreviations to drop, or \"none\"");
    evaluate->add_option("--queries", ev.queries, "queries per trial");
    evaluate->add_option("--repetitions", ev.repetitions, "trials to run");
    evaluate->add_option("--k1", ev.k1, "BM25 k1");
    evaluate->add_option("--b", ev.b, "BM25 b");
    evaluate->add_option("--discount", ev.discount, "fusion rank discount");
    evaluate->add_option("--seed", ev.seed, "master seed");
    evaluate->add_option("--threads", ev.threads, "worker threads (never changes results)");
    evaluate->add_option("--out", ev.out, "write the machine-readable report here");
    evaluate->add_flag("--sweep", ev.sweep, "run the samples x pages grid");
    evaluate->add_option("--sweep-samples", ev.sweep_samples, "sample counts for --sweep")
        ->delimiter(',');
    evaluate->add_option("--sweep-pages", ev.sweep_pages,
                         "page limits for --sweep (integers or \"all\")")
        ->delimiter(',');

    SynthOpts sy;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic collection and guide");
    synth->add_option("--out", sy.out, "collection file to write")->required();
    synth->add_option("--guide-out", sy.guide_out, "guide file to write")->required();
    synth->add_option("--boxes", sy.params.n_boxes, "number of boxes");
    synth->add_option("--docs-per-box", sy.params.docs_per_box, "documents per box");
    synth->add_option("--pages-min", sy.params.pages_per_doc_min, "minimum pages per document");
    synth->add_option("--pages-max", sy.params.pages_per_doc_max, "maximum pages per document");
    synth->add_option("--words-per-page", sy.params.words_per_page, "words per page");
    synth->add_option("--title-min", sy.params.title_words_min, "minimum title words");
    synth->add_option("--title-max", sy.params.title_words_max, "maximum title words");
    synth->add_option("--vocab", sy.params.vocab_size, "shared vocabulary size");
    synth->add_option("--topic-terms", sy.params.topic_terms_per_box, "topic terms per box");
    synth->add_option("--homophily", sy.params.homophily,
                      "probability a word comes from the box topic");
    synth->add_flag("--disjoint", sy.params.disjoint_topics, "give each box a private topic");
    synth->add_option("--codes-per-box", sy.params.guide_codes_per_box, "guide codes per box");
    synth->add_option("--seed", sy.params.seed, "generation seed");
    synth->add_option("--first-box", sy.params.first_box_number, "first box number");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return run_ingest(ingest_path);
        if (*build) return run_build_index(bi);
        if (*search) return run_search(se);
        if (*expand) return run_expand_label(el_guide, el_words, el_scope_notes, el_suppress);
        if (*fuse) return run_fuse(fuse_files, fuse_discount, fuse_top, fuse_output);
        if (*evaluate) return run_evaluate(ev, *evaluate);
        if (*synth) return run_synth(sy);
    } catch (const MissingFile& m) {
        std::cerr << "error: no such file: " << m.path << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
