#pragma once

#include <cstdint>
#include <random>

namespace uavrra {

/// SplitMix64 step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic per-trial stream: identical for a given (seed, trial)
/// regardless of how trials are distributed over threads.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t s = seed;
    splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL + trial;
    const std::uint64_t a = splitmix64(s);
    const std::uint64_t b = splitmix64(s);
    std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b),
                      std::uint32_t(b >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace uavrra
