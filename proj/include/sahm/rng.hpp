#ifndef SAHM_RNG_HPP
#define SAHM_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

namespace sahm {

// mt19937_64's output sequence is fixed by the standard; the conversions
// below are done by hand because std:: distributions are not portable.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in [0,1) with 53 random bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn with probability proportional to weights[i]; weights must have
// a positive sum.
inline std::size_t draw_weighted(Rng& rng, std::span<const double> weights)
{
    double total = 0.0;
    for (double w : weights)
        total += w;
    double u = uniform01(rng) * total;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0)
            continue;
        last_positive = i;
        if (u < weights[i])
            return i;
        u -= weights[i];
    }
    return last_positive;
}

} // namespace sahm

#endif
