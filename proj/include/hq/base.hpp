#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hq {

using Felt = std::uint8_t;

// Vector-space dimension cap: everything here lives in PG(N,q) with N+1 <= kMaxDim.
inline constexpr int kMaxDim = 12;

using Row = std::array<Felt, kMaxDim>;

inline constexpr long long kDefaultSubspaceCap = 10'000'000;
inline constexpr long long kDefaultGeneratorCap = 20'000;
inline constexpr long long kDefaultCliqueVertexCap = 200;

// Thrown when an enumeration would exceed its configured cap.
struct FeasibilityError : std::runtime_error {
  explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic cross-platform PRNG for seeded sampling.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n), n > 0
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace hq
