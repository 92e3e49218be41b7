#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boxfinder/textproc.hpp"

namespace boxfinder {

struct BM25Params {
    double k1 = 1.2;
    double b = 0.75;

    bool operator==(const BM25Params&) const = default;
};

struct PageSample {
    std::string doc_id;
    uint32_t pages_used = 0;

    bool operator==(const PageSample&) const = default;
};

// One retrievable item: a box and the text standing in for it.
struct BoxRepresentation {
    std::string box_id;
    TermSequence terms;
    std::vector<PageSample> provenance;
};

struct RankedEntry {
    std::string box_id;
    double score = 0.0;

    bool operator==(const RankedEntry&) const = default;
};

// Descending score; ties broken by ascending box number, with ids that do
// not parse as numbers sorting after the ones that do, lexicographically.
// Zero-score boxes are omitted entirely.
using RankedList = std::vector<RankedEntry>;

// Ordering used for ranked-list tie-breaks.
bool box_id_less(const std::string& a, const std::string& b);

// In-place sort into ranked-list order (score desc, box_id_less on ties).
void sort_ranked_list(RankedList& entries);

struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frequency index over box representations with Okapi-style scoring:
//
//   score(q, b) = sum over distinct query terms t of
//       qtf(t) * ln(1 + (N - df + 0.5)/(df + 0.5))
//              * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len/avg))
//
// qtf is the term's count in the query; there is no query-side saturation.
class BoxIndex {
public:
    static BoxIndex build(std::vector<BoxRepresentation> reps, BM25Params params = {});

    double score(const TermSequence& query, const std::string& box_id) const;
    RankedList rank(const TermSequence& query) const;

    // Per-term score contributions for one box, in first-occurrence query
    // order. Terms contributing zero are omitted.
    std::vector<std::pair<std::string, double>> explain(const TermSequence& query,
                                                        const std::string& box_id) const;

    size_t n_boxes() const { return boxes_.size(); }
    double avg_length() const { return avg_length_; }
    bool has_box(const std::string& box_id) const;
    uint32_t box_length(const std::string& box_id) const;
    uint32_t term_frequency(const std::string& term, const std::string& box_id) const;
    size_t box_frequency(const std::string& term) const;
    const BM25Params& params() const { return params_; }
    const std::vector<BoxRepresentation>& representations() const { return reps_; }

    void save(const std::string& path) const;
    // Parses the dump, rebuilds the index from the stored representations,
    // and cross-checks the stored postings against the rebuilt ones.
    static BoxIndex load(const std::string& path);

private:
    struct BoxInfo {
        std::string id;
        std::optional<long long> number;
        uint32_t length = 0;
    };

    uint32_t box_index(const std::string& box_id) const;
    double idf(size_t box_freq) const;
    double term_score(uint32_t tf, uint32_t box_len) const;
    bool ranked_tie_before(uint32_t a, uint32_t b) const;

    std::vector<BoxRepresentation> reps_;  // aligned with boxes_
    std::vector<BoxInfo> boxes_;
    std::unordered_map<std::string, uint32_t> box_pos_;
    // term -> (box index, term frequency), ascending box index
    std::unordered_map<std::string, std::vector<std::pair<uint32_t, uint32_t>>> postings_;
    double avg_length_ = 0.0;
    BM25Params params_;
};

} // namespace boxfinder
