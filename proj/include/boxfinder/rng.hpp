#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace boxfinder {

// splitmix64 finalizer; also used to fold stream labels into seeds.
uint64_t mix64(uint64_t x);

// Seedable random stream on top of std::mt19937_64, whose output sequence
// is pinned by the standard, so identical seeds agree across platforms.
// Value shaping is done here rather than with <random> distributions,
// which are not portable across standard libraries.
class RngStream {
public:
    explicit RngStream(uint64_t seed);

    // Independent child stream for a (master, path...) label tuple.
    static RngStream derive(uint64_t master, std::initializer_list<uint64_t> path);

    uint64_t next_u64();

    // Uniform on [0, n); n must be > 0. Rejection sampling, no modulo bias.
    uint64_t bounded(uint64_t n);

    // Uniform on [0, 1) with 53 bits of precision.
    double next_unit();

    // k distinct values from {0, ..., n-1}; selection order is kept.
    // k is capped at n.
    std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t k);

private:
    std::mt19937_64 engine_;
};

} // namespace boxfinder
