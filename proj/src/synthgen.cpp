#include "boxfinder/synthgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "boxfinder/rng.hpp"

namespace boxfinder {
namespace {

std::string pad_num(uint64_t v, size_t width) {
    std::string s = std::to_string(v);
    if (s.size() < width) s.insert(0, width - s.size(), '0');
    return s;
}

void check_params(const SynthParams& p) {
    auto bad = [](const std::string& msg) { throw std::invalid_argument("generate_corpus: " + msg); };
    if (p.n_boxes == 0) bad("n_boxes must be >= 1");
    if (p.docs_per_box == 0) bad("docs_per_box must be >= 1");
    if (p.words_per_page == 0) bad("words_per_page must be >= 1");
    if (p.vocab_size == 0) bad("vocab_size must be >= 1");
    if (p.pages_per_doc_min == 0 || p.pages_per_doc_min > p.pages_per_doc_max) {
        bad("pages_per_doc range is invalid");
    }
    if (p.title_words_min > p.title_words_max) bad("title_words range is invalid");
    if (!(p.homophily >= 0.0 && p.homophily <= 1.0)) bad("homophily must be in [0, 1]");
    if (p.topic_terms_per_box == 0 || p.topic_terms_per_box > p.vocab_size) {
        bad("topic_terms_per_box must be in [1, vocab_size]");
    }
    if (p.disjoint_topics &&
        static_cast<uint64_t>(p.n_boxes) * p.topic_terms_per_box > p.vocab_size) {
        bad("disjoint topics need n_boxes * topic_terms_per_box <= vocab_size");
    }
    if (p.guide_codes_per_box == 0 || p.guide_codes_per_box > p.topic_terms_per_box) {
        bad("guide_codes_per_box must be in [1, topic_terms_per_box]");
    }
}

} // namespace

SynthOutput generate_corpus(const SynthParams& p) {
    check_params(p);

    // Vocabulary of digit-bearing words: the stemmer passes them through,
    // so generated text survives the analysis chain verbatim.
    const size_t word_width = std::to_string(p.vocab_size - 1).size();
    auto word = [&](uint32_t i) { return "w" + pad_num(i, word_width); };

    std::vector<std::vector<uint32_t>> topics(p.n_boxes);
    RngStream topic_rng = RngStream::derive(p.seed, {1});
    for (uint32_t i = 0; i < p.n_boxes; ++i) {
        if (p.disjoint_topics) {
            topics[i].resize(p.topic_terms_per_box);
            for (uint32_t j = 0; j < p.topic_terms_per_box; ++j) {
                topics[i][j] = i * p.topic_terms_per_box + j;
            }
        } else {
            topics[i] = topic_rng.sample_without_replacement(p.vocab_size, p.topic_terms_per_box);
        }
    }

    // One subject-code family per box, labeled with slices of its topic
    // terms so label expansions overlap the box's own text.
    std::map<std::string, GuideEntry> codes;
    std::vector<std::vector<std::string>> box_codes(p.n_boxes);
    for (uint32_t i = 0; i < p.n_boxes; ++i) {
        const std::string base = std::to_string(i + 1);
        const uint32_t k = p.topic_terms_per_box;
        const uint32_t c = p.guide_codes_per_box;
        for (uint32_t j = 0; j < c; ++j) {
            std::string code = j == 0 ? "POL " + base : "POL " + base + "-" + std::to_string(j);
            const uint32_t lo = static_cast<uint32_t>(static_cast<uint64_t>(j) * k / c);
            const uint32_t hi = static_cast<uint32_t>(static_cast<uint64_t>(j + 1) * k / c);
            GuideEntry entry;
            std::string scope;
            for (uint32_t t = lo; t < hi; ++t) {
                std::string& dst = ((t - lo) % 2 == 0) ? entry.label : scope;
                if (!dst.empty()) dst += ' ';
                dst += word(topics[i][t]);
            }
            if (!scope.empty()) entry.scope_note = std::move(scope);
            box_codes[i].push_back(code);
            codes.emplace(std::move(code), std::move(entry));
        }
    }

    const size_t doc_width = std::to_string(p.docs_per_box - 1).size();
    std::vector<DocumentRecord> docs;
    docs.reserve(static_cast<size_t>(p.n_boxes) * p.docs_per_box);
    for (uint32_t i = 0; i < p.n_boxes; ++i) {
        const std::string box_id = std::to_string(p.first_box_number + i);
        for (uint32_t d = 0; d < p.docs_per_box; ++d) {
            RngStream rng = RngStream::derive(p.seed, {2, i, d});
            auto draw_word = [&]() -> std::string {
                if (rng.next_unit() < p.homophily) {
                    return word(topics[i][rng.bounded(p.topic_terms_per_box)]);
                }
                return word(static_cast<uint32_t>(rng.bounded(p.vocab_size)));
            };
            DocumentRecord rec;
            rec.doc_id = box_id + "-d" + pad_num(d, doc_width);
            rec.box_id = box_id;
            rec.folder_label = box_codes[i][d % box_codes[i].size()] + " 01/01/1967";
            const uint32_t n_pages =
                p.pages_per_doc_min +
                static_cast<uint32_t>(rng.bounded(p.pages_per_doc_max - p.pages_per_doc_min + 1));
            for (uint32_t pg = 0; pg < n_pages; ++pg) {
                std::string page;
                for (uint32_t w = 0; w < p.words_per_page; ++w) {
                    if (!page.empty()) page += ' ';
                    page += draw_word();
                }
                rec.pages.push_back(std::move(page));
            }
            // Title length follows a truncated exponential; the default
            // 1..26 range lands the mean near six words.
            const double e = -std::log1p(-rng.next_unit());
            const uint32_t extra = static_cast<uint32_t>(e * 5.5);
            const uint32_t len = std::min(p.title_words_min + extra, p.title_words_max);
            std::string title;
            for (uint32_t w = 0; w < len; ++w) {
                if (!title.empty()) title += ' ';
                title += draw_word();
            }
            rec.title = std::move(title);
            docs.push_back(std::move(rec));
        }
    }

    SynthOutput out;
    out.collection = Collection::from_documents(std::move(docs));
    out.guide = ClassificationGuide(std::move(codes), {});
    return out;
}

} // namespace boxfinder
