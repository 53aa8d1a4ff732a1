#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-mode pseudorandomness: every value is a pure function of
// (seed, stream tag, counters), so any single matrix entry, hash bin or
// noise sample can be regenerated in O(1) without storing anything.

namespace glcs::rng {

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t a) noexcept {
  return mix(mix(seed) ^ a);
}
constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix(hash(seed, a) ^ b);
}
constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                             std::uint64_t c) noexcept {
  return mix(hash(seed, a, b) ^ c);
}
constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                             std::uint64_t c, std::uint64_t d) noexcept {
  return mix(hash(seed, a, b, c) ^ d);
}

// Stream tags keep independent uses of the same seed from colliding.
enum Stream : std::uint64_t {
  kGraphStream = 0x01,
  kColumnStream = 0x02,
  kNoiseStream = 0x03,
  kCodeStream = 0x04,
  kValueStream = 0x05,
  kSupportStream = 0x06,
  kTrialStream = 0x07,
};

inline double unit(std::uint64_t h) noexcept {  // [0, 1)
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}
inline double unit_pos(std::uint64_t h) noexcept {  // (0, 1]
  return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller from two hashed words.
inline double gaussian(std::uint64_t h1, std::uint64_t h2) noexcept {
  const double u1 = unit_pos(h1);
  const double u2 = unit(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline std::int8_t rademacher(std::uint64_t h) noexcept {
  return (h & 1u) ? std::int8_t{-1} : std::int8_t{1};
}

// Multiply-shift reduction to [0, n); bias is O(n / 2^64).
inline std::uint64_t bounded(std::uint64_t h, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * n) >> 64);
}

}  // namespace glcs::rng
