#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace orchard::rng {

// mt19937_64 is fully specified by the standard, so identical seeds give
// identical streams on every platform. The distribution helpers below avoid
// std::uniform_int_distribution, whose output is implementation-defined.
using Engine = std::mt19937_64;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = 0xCBF29CE484222325ull) {
  for (char c : bytes) {
    state ^= static_cast<unsigned char>(c);
    state *= 0x100000001B3ull;
  }
  return state;
}

// Seed derivation scheme (documented in the CLI help and the manifest):
//   split_seed = splitmix64(master_seed XOR fnv1a64(split_name))
//   shard_seed = splitmix64(split_seed + kGolden * (shard_index + 1))
// so any split, and any shard within it, regenerates in isolation.
constexpr std::uint64_t derive_split_seed(std::uint64_t master_seed, std::string_view split_name) {
  return splitmix64(master_seed ^ fnv1a64(split_name));
}

constexpr std::uint64_t derive_shard_seed(std::uint64_t split_seed, std::uint64_t shard_index) {
  return splitmix64(split_seed + kGolden * (shard_index + 1));
}

// Unbiased integer in [0, n), n >= 1 (Lemire's multiply-shift with rejection).
inline std::size_t uniform_index(Engine& engine, std::size_t n) {
  using u128 = unsigned __int128;
  std::uint64_t range = n;
  u128 product = static_cast<u128>(engine()) * range;
  auto low = static_cast<std::uint64_t>(product);
  if (low < range) {
    std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      product = static_cast<u128>(engine()) * range;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

inline int uniform_digit(Engine& engine) { return static_cast<int>(uniform_index(engine, 10)); }

inline bool coin(Engine& engine) { return (engine() >> 63) != 0; }

// Bernoulli over a 53-bit uniform draw in [0, 1).
inline bool bernoulli(Engine& engine, double p) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53 < p;
}

}  // namespace orchard::rng
