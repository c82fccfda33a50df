#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace tlo {

// Seedable generator whose output is identical on every platform.
//
// The engine is std::mt19937_64 (its output sequence is fixed by the
// standard); the distributions are implemented here because the standard
// library ones are implementation-defined.
//
// Stream splitting: split(k) returns an independent generator seeded with
// splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15). Splitting does not
// consume any state of the parent.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    Rng split(std::uint64_t stream) const;

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi] (inclusive), by rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n);

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tlo
