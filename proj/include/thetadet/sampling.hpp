#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "thetadet/rational.hpp"

namespace thetadet {

// Sampling space for random rationals: numerator in [-9, 9] \ {0},
// denominator in [1, 9].
inline constexpr long kSampleBound = 9;

inline Rational sample_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-kSampleBound, kSampleBound - 1);
  std::uniform_int_distribution<long> den(1, kSampleBound);
  long a = num(rng);
  if (a >= 0) ++a;
  return make_rational(a, den(rng));
}

// Seed derived from a case id, dimension and user seed.
inline std::uint64_t mix_seed(const std::string& id, int n, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
  h ^= static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ull;
  h ^= seed + 0x632be59bd9b4e019ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace thetadet
