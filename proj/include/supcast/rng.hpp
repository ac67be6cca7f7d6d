#pragma once

#include <cstdint>
#include <random>

namespace supcast {

using Rng = std::mt19937_64;

/// SplitMix64 step; advances state and returns the next value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from (master, stream index).
/// Used for per-replication and per-channel generators so concurrent
/// workers never share state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    return splitmix64(s) ^ a;
}

} // namespace supcast
