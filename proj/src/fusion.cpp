#include "boxfinder/fusion.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace boxfinder {

RankedList rrf(const std::vector<RankedList>& lists, FusionParams params) {
    if (!(params.discount >= 0.0)) {
        throw std::invalid_argument("rrf: discount must be >= 0");
    }
    std::map<std::string, std::vector<double>> contributions;
    for (const RankedList& list : lists) {
        for (size_t i = 0; i < list.size(); ++i) {
            contributions[list[i].box_id].push_back(1.0 /
                                                    (params.discount + static_cast<double>(i + 1)));
        }
    }
    RankedList out;
    out.reserve(contributions.size());
    for (auto& [box_id, parts] : contributions) {
        // Summing in sorted order makes the fused score a function of the
        // multiset of ranks, so reordering the input lists cannot move a
        // score by an ulp.
        std::sort(parts.begin(), parts.end());
        double score = 0.0;
        for (double p : parts) score += p;
        out.push_back({box_id, score});
    }
    sort_ranked_list(out);
    return out;
}

} // namespace boxfinder
