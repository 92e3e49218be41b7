#pragma once

#include <vector>

#include "boxfinder/boxindex.hpp"

namespace boxfinder {

struct FusionParams {
    double discount = 60.0;

    bool operator==(const FusionParams&) const = default;
};

// Reciprocal rank fusion: fused(b) = sum over the lists containing b of
// 1 / (discount + rank), with ranks starting at 1. Empty input lists
// contribute nothing; fusing only empty lists yields an empty list.
RankedList rrf(const std::vector<RankedList>& lists, FusionParams params = {});

} // namespace boxfinder
