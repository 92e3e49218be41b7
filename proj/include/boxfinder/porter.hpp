#pragma once

#include <string>
#include <string_view>

namespace boxfinder {

// Suffix-stripping stemmer (Porter, 1980), the five-step published rule
// set. Input is expected to be lowercase ASCII. Tokens containing a digit
// and tokens of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view token);

} // namespace boxfinder
