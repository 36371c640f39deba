#pragma once

// Platform-stable random helpers.
//
// std::mt19937_64 has a standardized output sequence, but the std::*_distribution
// adaptors and std::shuffle do not. Everything that consumes randomness in the
// simulator goes through the helpers below so that a (config, seed) pair produces
// the same trajectory with every standard library.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace physarum {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
template <class Gen>
double uniform01(Gen& gen)
{
    return static_cast<double>(static_cast<std::uint64_t>(gen()) >> 11) * 0x1.0p-53;
}

/// Fair coin from the top bit of one draw.
template <class Gen>
bool coin(Gen& gen)
{
    return (static_cast<std::uint64_t>(gen()) >> 63) != 0;
}

/// Uniform integer in [0, bound), bound > 0. Multiply-shift with rejection
/// (Lemire), no modulo bias.
template <class Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t bound)
{
    __extension__ using u128 = unsigned __int128;
    u128 product = u128(static_cast<std::uint64_t>(gen())) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (std::uint64_t(0) - bound) % bound;
        while (low < threshold) {
            product = u128(static_cast<std::uint64_t>(gen())) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

/// Fisher-Yates shuffle.
template <class Gen, class T>
void shuffle(std::span<T> items, Gen& gen)
{
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(gen, i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

}  // namespace physarum
