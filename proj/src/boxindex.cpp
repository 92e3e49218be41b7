#include "boxfinder/boxindex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace boxfinder {
namespace {

using ojson = nlohmann::ordered_json;

bool try_number(const std::string& id, long long& out) {
    if (id.empty()) return false;
    for (char c : id) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), out);
    return ec == std::errc() && ptr == id.data() + id.size();
}

// Query term counts in first-occurrence order, so scoring visits terms in
// a reproducible sequence.
std::vector<std::pair<std::string, uint32_t>> aggregate_terms(const TermSequence& query) {
    std::vector<std::pair<std::string, uint32_t>> out;
    std::unordered_map<std::string, size_t> pos;
    for (const std::string& t : query) {
        auto [it, inserted] = pos.emplace(t, out.size());
        if (inserted) {
            out.emplace_back(t, 1u);
        } else {
            ++out[it->second].second;
        }
    }
    return out;
}

} // namespace

bool box_id_less(const std::string& a, const std::string& b) {
    long long na = 0;
    long long nb = 0;
    const bool pa = try_number(a, na);
    const bool pb = try_number(b, nb);
    if (pa && pb) return na != nb ? na < nb : a < b;
    if (pa != pb) return pa;
    return a < b;
}

void sort_ranked_list(RankedList& entries) {
    std::sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return box_id_less(a.box_id, b.box_id);
    });
}

BoxIndex BoxIndex::build(std::vector<BoxRepresentation> reps, BM25Params params) {
    if (reps.empty()) {
        throw IndexError("no box representations to index");
    }
    BoxIndex idx;
    idx.params_ = params;
    idx.reps_ = std::move(reps);
    idx.boxes_.reserve(idx.reps_.size());
    uint64_t total = 0;
    for (uint32_t i = 0; i < idx.reps_.size(); ++i) {
        const BoxRepresentation& rep = idx.reps_[i];
        auto [it, inserted] = idx.box_pos_.emplace(rep.box_id, i);
        if (!inserted) {
            throw IndexError("duplicate box id '" + rep.box_id + "'");
        }
        BoxInfo info;
        info.id = rep.box_id;
        long long n = 0;
        if (try_number(rep.box_id, n)) info.number = n;
        info.length = static_cast<uint32_t>(rep.terms.size());
        total += info.length;
        idx.boxes_.push_back(std::move(info));
        for (const std::string& t : rep.terms) {
            auto& vec = idx.postings_[t];
            if (vec.empty() || vec.back().first != i) {
                vec.emplace_back(i, 0u);
            }
            ++vec.back().second;
        }
    }
    if (total == 0) {
        throw IndexError("every box representation is empty");
    }
    idx.avg_length_ = static_cast<double>(total) / static_cast<double>(idx.boxes_.size());
    return idx;
}

uint32_t BoxIndex::box_index(const std::string& box_id) const {
    auto it = box_pos_.find(box_id);
    if (it == box_pos_.end()) {
        throw IndexError("unknown box id '" + box_id + "'");
    }
    return it->second;
}

double BoxIndex::idf(size_t box_freq) const {
    const double n = static_cast<double>(boxes_.size());
    const double df = static_cast<double>(box_freq);
    return std::log1p((n - df + 0.5) / (df + 0.5));
}

double BoxIndex::term_score(uint32_t tf, uint32_t box_len) const {
    const double f = static_cast<double>(tf);
    const double norm = 1.0 - params_.b + params_.b * static_cast<double>(box_len) / avg_length_;
    return f * (params_.k1 + 1.0) / (f + params_.k1 * norm);
}

bool BoxIndex::has_box(const std::string& box_id) const {
    return box_pos_.count(box_id) != 0;
}

uint32_t BoxIndex::box_length(const std::string& box_id) const {
    return boxes_[box_index(box_id)].length;
}

uint32_t BoxIndex::term_frequency(const std::string& term, const std::string& box_id) const {
    const uint32_t bi = box_index(box_id);
    auto it = postings_.find(term);
    if (it == postings_.end()) return 0;
    const auto& vec = it->second;
    auto p = std::lower_bound(vec.begin(), vec.end(), bi,
                              [](const auto& e, uint32_t v) { return e.first < v; });
    return (p != vec.end() && p->first == bi) ? p->second : 0;
}

size_t BoxIndex::box_frequency(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
}

double BoxIndex::score(const TermSequence& query, const std::string& box_id) const {
    const uint32_t bi = box_index(box_id);
    const uint32_t len = boxes_[bi].length;
    double s = 0.0;
    for (const auto& [term, qtf] : aggregate_terms(query)) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const auto& vec = it->second;
        auto p = std::lower_bound(vec.begin(), vec.end(), bi,
                                  [](const auto& e, uint32_t v) { return e.first < v; });
        if (p == vec.end() || p->first != bi) continue;
        s += static_cast<double>(qtf) * idf(vec.size()) * term_score(p->second, len);
    }
    return s;
}

std::vector<std::pair<std::string, double>> BoxIndex::explain(const TermSequence& query,
                                                              const std::string& box_id) const {
    const uint32_t bi = box_index(box_id);
    const uint32_t len = boxes_[bi].length;
    std::vector<std::pair<std::string, double>> out;
    for (const auto& [term, qtf] : aggregate_terms(query)) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const auto& vec = it->second;
        auto p = std::lower_bound(vec.begin(), vec.end(), bi,
                                  [](const auto& e, uint32_t v) { return e.first < v; });
        if (p == vec.end() || p->first != bi) continue;
        out.emplace_back(term,
                         static_cast<double>(qtf) * idf(vec.size()) * term_score(p->second, len));
    }
    return out;
}

bool BoxIndex::ranked_tie_before(uint32_t a, uint32_t b) const {
    const BoxInfo& x = boxes_[a];
    const BoxInfo& y = boxes_[b];
    if (x.number && y.number) {
        return *x.number != *y.number ? *x.number < *y.number : x.id < y.id;
    }
    if (x.number.has_value() != y.number.has_value()) return x.number.has_value();
    return x.id < y.id;
}

RankedList BoxIndex::rank(const TermSequence& query) const {
    std::vector<double> scores(boxes_.size(), 0.0);
    for (const auto& [term, qtf] : aggregate_terms(query)) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        const double w = static_cast<double>(qtf) * idf(it->second.size());
        for (const auto& [bi, tf] : it->second) {
            scores[bi] += w * term_score(tf, boxes_[bi].length);
        }
    }
    std::vector<uint32_t> order;
    for (uint32_t i = 0; i < scores.size(); ++i) {
        if (scores[i] > 0.0) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return ranked_tie_before(a, b);
    });
    RankedList out;
    out.reserve(order.size());
    for (uint32_t i : order) {
        out.push_back({boxes_[i].id, scores[i]});
    }
    return out;
}

void BoxIndex::save(const std::string& path) const {
    ojson doc;
    doc["format"] = "boxfinder-index";
    doc["version"] = 1;
    doc["bm25"]["k1"] = params_.k1;
    doc["bm25"]["b"] = params_.b;
    ojson boxes = ojson::array();
    for (const BoxRepresentation& rep : reps_) {
        ojson rb;
        rb["box_id"] = rep.box_id;
        rb["terms"] = rep.terms;
        ojson prov = ojson::array();
        for (const PageSample& ps : rep.provenance) {
            prov.push_back({{"doc_id", ps.doc_id}, {"pages_used", ps.pages_used}});
        }
        rb["provenance"] = std::move(prov);
        boxes.push_back(std::move(rb));
    }
    doc["boxes"] = std::move(boxes);
    std::vector<std::string> terms;
    terms.reserve(postings_.size());
    for (const auto& [t, vec] : postings_) terms.push_back(t);
    std::sort(terms.begin(), terms.end());
    ojson postings = ojson::object();
    for (const std::string& t : terms) {
        ojson vec = ojson::array();
        for (const auto& [bi, tf] : postings_.at(t)) {
            vec.push_back({bi, tf});
        }
        postings[t] = std::move(vec);
    }
    doc["postings"] = std::move(postings);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IndexError("cannot write '" + path + "'");
    }
    out << doc.dump(1) << '\n';
    if (!out) {
        throw IndexError("write failed for '" + path + "'");
    }
}

BoxIndex BoxIndex::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IndexError("cannot open '" + path + "'");
    }
    ojson doc;
    try {
        doc = ojson::parse(in);
    } catch (const ojson::parse_error& e) {
        throw IndexError("malformed index file '" + path + "': " + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "boxfinder-index") {
        throw IndexError("'" + path + "' is not an index dump");
    }
    if (doc.value("version", 0) != 1) {
        throw IndexError("unsupported index version in '" + path + "'");
    }
    BM25Params params;
    params.k1 = doc.at("bm25").at("k1").get<double>();
    params.b = doc.at("bm25").at("b").get<double>();
    std::vector<BoxRepresentation> reps;
    for (const auto& rb : doc.at("boxes")) {
        BoxRepresentation rep;
        rep.box_id = rb.at("box_id").get<std::string>();
        rep.terms = rb.at("terms").get<TermSequence>();
        for (const auto& pv : rb.at("provenance")) {
            rep.provenance.push_back(
                {pv.at("doc_id").get<std::string>(), pv.at("pages_used").get<uint32_t>()});
        }
        reps.push_back(std::move(rep));
    }
    BoxIndex idx = build(std::move(reps), params);
    // The stored postings are redundant with the terms; drift means the
    // file was edited or written by an incompatible version.
    const auto& stored = doc.at("postings");
    if (stored.size() != idx.postings_.size()) {
        throw IndexError("index dump postings disagree with stored terms");
    }
    for (const auto& [term, vec] : stored.items()) {
        auto it = idx.postings_.find(term);
        if (it == idx.postings_.end()) {
            throw IndexError("index dump postings list unknown term '" + term + "'");
        }
        const auto& rebuilt = it->second;
        if (vec.size() != rebuilt.size()) {
            throw IndexError("index dump postings disagree for term '" + term + "'");
        }
        for (size_t i = 0; i < rebuilt.size(); ++i) {
            if (vec[i].at(0).get<uint32_t>() != rebuilt[i].first ||
                vec[i].at(1).get<uint32_t>() != rebuilt[i].second) {
                throw IndexError("index dump postings disagree for term '" + term + "'");
            }
        }
    }
    return idx;
}

} // namespace boxfinder
