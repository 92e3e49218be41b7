#pragma once

#include <cstdint>

#include "boxfinder/corpus.hpp"
#include "boxfinder/labelterms.hpp"

namespace boxfinder {

// Knobs for generated corpora. Words are drawn from a two-component
// mixture: with probability `homophily` from the box's topic terms,
// otherwise from the shared vocabulary. homophily 0 makes box assignment
// carry no textual signal at all; 1 makes boxes purely topical.
struct SynthParams {
    uint32_t n_boxes = 35;
    uint32_t docs_per_box = 50;
    uint32_t pages_per_doc_min = 1;
    uint32_t pages_per_doc_max = 1;
    uint32_t words_per_page = 228;
    uint32_t title_words_min = 1;
    uint32_t title_words_max = 26;
    uint32_t vocab_size = 2000;
    uint32_t topic_terms_per_box = 50;
    double homophily = 0.5;
    bool disjoint_topics = false;   // give each box a private topic slice
    uint32_t guide_codes_per_box = 1;
    uint64_t seed = 0;
    uint32_t first_box_number = 1901;
};

struct SynthOutput {
    Collection collection;
    ClassificationGuide guide;
};

// Deterministic in params: equal params give byte-identical saved output.
SynthOutput generate_corpus(const SynthParams& params);

} // namespace boxfinder
