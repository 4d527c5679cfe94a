#pragma once

#include <cstdint>
#include <random>

#include "trachtenberg/digits.hpp"

namespace trachtenberg {

// Problem generation must be reproducible across standard libraries, so draws
// go through this rejection sampler instead of std::uniform_int_distribution,
// whose algorithm is implementation defined. std::mt19937_64 itself is fully
// specified.
using Generator = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Generator& generator, std::uint64_t bound) {
  // 2^64 mod bound; values below it would bias the remainder.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = generator();
    if (x >= threshold) {
      return x % bound;
    }
  }
}

/// `length` uniform digits with a nonzero leading digit.
DigitString random_multiplicand(Generator& generator, std::size_t length);

}  // namespace trachtenberg
