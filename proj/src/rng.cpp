#include "boxfinder/rng.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace boxfinder {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(uint64_t seed) : engine_(mix64(seed)) {}

RngStream RngStream::derive(uint64_t master, std::initializer_list<uint64_t> path) {
    uint64_t s = mix64(master);
    for (uint64_t p : path) {
        s = mix64(s ^ mix64(p));
    }
    return RngStream(s);
}

uint64_t RngStream::next_u64() {
    return engine_();
}

uint64_t RngStream::bounded(uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("RngStream::bounded: n must be > 0");
    }
    constexpr uint64_t max64 = std::numeric_limits<uint64_t>::max();
    // Reject draws above the largest multiple of n so every residue is
    // equally likely. rem == 2^64 mod n, and rem == 0 accepts everything.
    const uint64_t rem = (max64 % n + 1) % n;
    uint64_t x;
    do {
        x = engine_();
    } while (x > max64 - rem);
    return x % n;
}

double RngStream::next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<uint32_t> RngStream::sample_without_replacement(uint32_t n, uint32_t k) {
    if (k > n) k = n;
    std::vector<uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    std::vector<uint32_t> out;
    out.reserve(k);
    // Partial Fisher-Yates: after i swaps the prefix holds the sample.
    for (uint32_t i = 0; i < k; ++i) {
        const uint64_t j = i + bounded(n - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

} // namespace boxfinder
