#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace evoq {

/// Mixes a base seed with a stream id so that logically independent
/// consumers (population init, action selection, replay sampling, ...)
/// never share a generator state. splitmix64 finalizer, two rounds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// Seeded PRNG wrapper. All draws go through explicit conversions from
/// raw 64-bit output so results are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n);

    /// Exponential variate with the given mean (inverse transform).
    double exponential(double mean);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace evoq
