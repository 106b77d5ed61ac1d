#pragma once

#include <cstdint>

#include "perc/lattice.hpp"

namespace perc::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
inline constexpr std::uint64_t kRowSalt = 0xd1b54a32d192ed03ull;

// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// One stream per (seed, replicate); streams are decorrelated by double mixing.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t replicate) {
  return mix64(mix64(seed + kGolden) ^ replicate);
}

// 53-bit draw for one site. Pure function of (seed, replicate, site):
// independent of sampling order, rect shape and worker partitioning.
inline std::uint64_t site_bits53(std::uint64_t key, int x, int y) {
  std::uint64_t a = key + static_cast<std::uint64_t>(static_cast<std::int64_t>(x)) * kGolden +
                    static_cast<std::uint64_t>(static_cast<std::int64_t>(y)) * kRowSalt;
  return mix64(a) >> 11;
}

double site_uniform(std::uint64_t seed, std::uint64_t replicate, Site site);

// Integer threshold T with (bits53 < T) <=> (bits53 * 2^-53 < p), exactly.
std::uint64_t occupancy_threshold(double p);

}  // namespace perc::rng
