#include "boxfinder/porter.hpp"

#include <array>
#include <cstddef>

namespace boxfinder {
namespace {

bool is_cons(const std::string& w, size_t i) {
    const char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !is_cons(w, i - 1);
    return true;
}

// Number of vowel-consonant alternations in w[0..len): [C](VC)^m[V].
int measure(const std::string& w, size_t len) {
    size_t i = 0;
    int m = 0;
    while (i < len && is_cons(w, i)) ++i;
    while (i < len) {
        while (i < len && !is_cons(w, i)) ++i;
        if (i >= len) break;
        ++m;
        while (i < len && is_cons(w, i)) ++i;
    }
    return m;
}

bool contains_vowel(const std::string& w, size_t len) {
    for (size_t i = 0; i < len; ++i) {
        if (!is_cons(w, i)) return true;
    }
    return false;
}

bool ends_double_cons(const std::string& w) {
    const size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_cons(w, n - 1);
}

// *o: w[0..len) ends consonant-vowel-consonant, final consonant not w/x/y.
bool ends_cvc(const std::string& w, size_t len) {
    if (len < 3) return false;
    if (!is_cons(w, len - 3) || is_cons(w, len - 2) || !is_cons(w, len - 1)) return false;
    const char c = w[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() &&
           std::string_view(w).substr(w.size() - suf.size()) == suf;
}

void step1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.erase(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.erase(w.size() - 2);
    } else if (ends_with(w, "ss")) {
        // keep
    } else if (ends_with(w, "s")) {
        w.pop_back();
    }
}

void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.pop_back();
        return;
    }
    bool stripped = false;
    if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
        w.erase(w.size() - 2);
        stripped = true;
    } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
        w.erase(w.size() - 3);
        stripped = true;
    }
    if (!stripped) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_cons(w) && w.back() != 'l' && w.back() != 's' && w.back() != 'z') {
        w.pop_back();
    } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
        w.push_back('e');
    }
}

void step1c(std::string& w) {
    if (w.back() == 'y' && contains_vowel(w, w.size() - 1)) {
        w.back() = 'i';
    }
}

struct Rule {
    std::string_view suffix;
    std::string_view repl;
};

// Listed in published order; the first suffix that matches consumes the
// step whether or not the measure condition lets it rewrite.
constexpr std::array<Rule, 20> step2_rules{{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> step3_rules{{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

template <size_t N>
void apply_rule_list(std::string& w, const std::array<Rule, N>& rules) {
    for (const Rule& r : rules) {
        if (!ends_with(w, r.suffix)) continue;
        const size_t stem_len = w.size() - r.suffix.size();
        if (measure(w, stem_len) > 0) {
            w.erase(stem_len);
            w.append(r.repl);
        }
        return;
    }
}

constexpr std::array<std::string_view, 19> step4_suffixes{
    "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
    "ment", "ent", "ion",  "ou",  "ism", "ate",  "iti",  "ous", "ive", "ize",
};

void step4(std::string& w) {
    for (std::string_view suf : step4_suffixes) {
        if (!ends_with(w, suf)) continue;
        const size_t stem_len = w.size() - suf.size();
        if (measure(w, stem_len) > 1) {
            if (suf == "ion") {
                const char c = stem_len > 0 ? w[stem_len - 1] : '\0';
                if (c != 's' && c != 't') return;
            }
            w.erase(stem_len);
        }
        return;
    }
}

void step5a(std::string& w) {
    if (w.back() != 'e') return;
    const size_t stem_len = w.size() - 1;
    const int m = measure(w, stem_len);
    if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) {
        w.pop_back();
    }
}

void step5b(std::string& w) {
    if (w.back() == 'l' && ends_double_cons(w) && measure(w, w.size()) > 1) {
        w.pop_back();
    }
}

} // namespace

std::string porter_stem(std::string_view token) {
    std::string w(token);
    if (w.size() <= 2) return w;
    for (char c : w) {
        if (c >= '0' && c <= '9') return w;
    }
    step1a(w);
    step1b(w);
    step1c(w);
    apply_rule_list(w, step2_rules);
    apply_rule_list(w, step3_rules);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
}

} // namespace boxfinder
