#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ddp {

/// Uniform integer in [0, bound) drawn from a 64-bit Mersenne twister by
/// rejection sampling. Unlike std::uniform_int_distribution the sequence is
/// identical on every standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Fisher-Yates shuffle with a portable index sequence.
template <typename T>
void portable_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace ddp
