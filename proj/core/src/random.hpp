#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace semid::detail {

/// Engine seeded from a list of 64-bit keys through std::seed_seq; both are
/// fully specified by the standard, so streams match across platforms.
inline std::mt19937_64 seeded_engine(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t k : keys) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

/// Uniform value in [0, bound) by rejection on the smallest covering bit mask.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const int width = std::bit_width(bound - 1);
  const std::uint64_t mask = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  while (true) {
    const std::uint64_t x = gen() & mask;
    if (x < bound) return x;
  }
}

}  // namespace semid::detail
