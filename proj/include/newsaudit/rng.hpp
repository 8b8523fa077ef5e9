#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace newsaudit {

// Seeded RNG with hand-rolled bounded draws and Fisher-Yates shuffling.
// std::shuffle and std::uniform_int_distribution are implementation-defined,
// so seeded artifacts (splits, subsamples) would not be reproducible across
// standard libraries; this keeps them bit-stable everywhere.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    // Uniform draw in [0, bound). Rejection sampling keeps it unbiased.
    uint64_t next_below(uint64_t bound) {
        assert(bound > 0);
        const uint64_t max = std::numeric_limits<uint64_t>::max();
        const uint64_t zone = max - (max % bound + 1) % bound;
        for (;;) {
            uint64_t x = gen_();
            if (x <= zone) return x % bound;
        }
    }

    // Uniform in [0, 1) with 53 bits of resolution.
    double next_unit() {
        return static_cast<double>(next_below(uint64_t(1) << 53)) * (1.0 / 9007199254740992.0);
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace newsaudit
