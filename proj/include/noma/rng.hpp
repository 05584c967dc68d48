#pragma once

#include <cstdint>
#include <random>

namespace noma {

using Rng = std::mt19937_64;

/// Purposes for independent substreams spawned from one master seed.
enum class Stream : std::uint64_t {
    Placement = 1,
    Fading = 2,
    Noise = 3,
    Trials = 4,
    Drops = 5,
    Instances = 6,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for substream (purpose, index) of a master seed. Pure function of its inputs.
inline std::uint64_t derive_seed(std::uint64_t master, Stream purpose, std::uint64_t index = 0)
{
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ static_cast<std::uint64_t>(purpose) * 0xd1b54a32d192ed03ULL);
    return splitmix64(s ^ index);
}

inline Rng make_rng(std::uint64_t master, Stream purpose, std::uint64_t index = 0)
{
    std::uint64_t s = derive_seed(master, purpose, index);
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
    return Rng(seq);
}

} // namespace noma
