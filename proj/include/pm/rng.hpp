#pragma once

#include <cstdint>
#include <random>

namespace pm {

// Seeded pseudo-random source used by every randomized operation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, so results are bit-reproducible across platforms for a given
// seed. Bounded draws use rejection sampling (never modulo bias): draw
// 64-bit words until one falls below the largest multiple of n.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform real in [0, 1) with 53 random bits.
    double unit() { return (eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

} // namespace pm
