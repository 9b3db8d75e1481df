#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace pubtrend {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent seeds from a master seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix_seed(master ^ mix_seed(stream));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return derive_seed(master, h);
}

// Uniform in [0, 1) with 53 random bits; identical across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Slight modulo bias is irrelevant at our sizes.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

// Box-Muller standard normal.
inline double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

// Fisher-Yates with uniform_index, so shuffles are reproducible everywhere.
template <typename It>
void shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<std::size_t>(last - first);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace pubtrend
