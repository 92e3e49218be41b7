#include "boxfinder/textproc.hpp"

#include "boxfinder/porter.hpp"

namespace boxfinder {
namespace {

inline bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline char fold(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            cur.push_back(fold(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

TermSequence analyze(std::string_view text) {
    TermSequence terms = tokenize(text);
    for (std::string& t : terms) {
        t = porter_stem(t);
    }
    return terms;
}

} // namespace boxfinder
