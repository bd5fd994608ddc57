#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace kswitch {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t scramble_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for replicate `replicate` of the walk at switch order `k`.
///
/// The base seed is offset by the replicate index and scrambled, then mixed
/// with the scrambled switch order, so every (k, replicate) cell gets an
/// independent stream that is reproducible from the base seed alone.
constexpr std::uint64_t walk_seed(std::uint64_t base, std::size_t k, std::size_t replicate) noexcept {
  return scramble_seed(scramble_seed(base + replicate) ^ scramble_seed(0xC0FFEEULL + k));
}

/// Uniform integer in [0, n), n >= 1. Lemire's multiply-shift with rejection
/// of the biased low range.
inline std::size_t uniform_below(Rng& rng, std::size_t n) {
  const auto bound = static_cast<std::uint64_t>(n);
  unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

}  // namespace kswitch
