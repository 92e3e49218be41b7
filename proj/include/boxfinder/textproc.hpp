#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace boxfinder {

// Ordered bag of terms; duplicates are kept because term frequency matters.
using TermSequence = std::vector<std::string>;

// Maximal runs of ASCII letters and digits, case-folded to lowercase.
// Everything else, including bytes outside ASCII, separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// tokenize followed by porter_stem on each token, order preserved.
TermSequence analyze(std::string_view text);

} // namespace boxfinder
