#pragma once

#include <cstdint>
#include <random>

namespace rmtcum {

/// splitmix64 mixing step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic per-(seed, substream) generator: the same pair yields the
/// same stream no matter which thread or in which order it is drawn, so
/// parallel and serial sampling agree bit for bit.
inline std::mt19937_64 substream_rng(std::uint64_t seed, std::uint64_t substream) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~substream)));
}

}  // namespace rmtcum
