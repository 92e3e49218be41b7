#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxfinder/boxindex.hpp"
#include "boxfinder/corpus.hpp"
#include "boxfinder/fusion.hpp"
#include "boxfinder/labelterms.hpp"
#include "boxfinder/rng.hpp"

namespace boxfinder {

enum class QueryMode { title, qbe };
enum class IndexSource { ocr, labels, fusion };

const char* to_string(QueryMode m);
const char* to_string(IndexSource s);
QueryMode query_mode_from_string(const std::string& s);
IndexSource index_source_from_string(const std::string& s);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    uint32_t samples_per_box = 3;
    // Pages read per document, both for box representations and for
    // example queries; unset reads every page.
    std::optional<uint32_t> page_limit = 1;
    QueryMode query_mode = QueryMode::qbe;
    IndexSource index_source = IndexSource::ocr;
    bool include_scope_notes = false;
    std::set<std::string> suppressed_countries = {"BRAZ"};
    uint32_t queries_per_trial = 100;
    uint32_t repetitions = 100;
    BM25Params bm25;
    FusionParams fusion;
    uint64_t master_seed = 0;

    bool operator==(const ExperimentConfig&) const = default;
};

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

struct QueryOutcome {
    std::string true_box;
    std::string query_doc;
    RankedList ranked;
};

struct TrialResult {
    uint32_t top1 = 0;
    uint32_t top2 = 0;
    uint32_t adjacent = 0;
    // box_id -> docs whose text stood in for the box this trial
    std::map<std::string, std::vector<std::string>> representation_docs;
    std::vector<QueryOutcome> queries;
};

struct MetricSummary {
    double mean = 0.0;
    double stddev = 0.0;
};

struct MetricsReport {
    ExperimentConfig config;
    uint32_t boxes = 0;
    uint32_t documents = 0;
    MetricSummary top1;
    MetricSummary top2;
    MetricSummary adjacent;
    // per trial: correct-at-1, correct-in-top-2, top box adjacent-or-equal
    std::vector<std::array<uint32_t, 3>> trial_counts;
};

std::string report_to_json(const MetricsReport& r);
std::string report_table(const MetricsReport& r);

// n distinct doc ids from the box, in selection order; capped at box size.
std::vector<std::string> select_representation_docs(const Collection& c, const std::string& box_id,
                                                    uint32_t n, RngStream& rng);

// Title queries analyze the catalog title (which must be nonempty);
// example queries analyze the first page_limit pages of OCR.
TermSequence make_query(const DocumentRecord& doc, QueryMode mode,
                        std::optional<uint32_t> page_limit);

// One repetition: sample representations, build the index, run
// queries_per_trial lookups against boxes the query documents were
// excluded from representing. Streams are derived from (master_seed,
// trial_index), so trials are reproducible in isolation.
TrialResult run_trial(const Collection& c, const ClassificationGuide* guide,
                      const ExperimentConfig& cfg, uint32_t trial_index);

// Runs cfg.repetitions trials and aggregates percent metrics. `threads`
// only splits the trials across workers; results are slotted by trial
// index and reduced in order, so the report is identical for any thread
// count (which is also why the config echo never mentions it).
MetricsReport run_experiment(const Collection& c, const ClassificationGuide* guide,
                             const ExperimentConfig& cfg, uint32_t threads = 1);

} // namespace boxfinder
