#pragma once
// Deterministic per-check sampling. Every check owns its own stream seeded
// from (global seed, check id), and only modulo reductions are used, so the
// same seed gives the same samples on every platform.

#include <cstdint>
#include <random>
#include <string_view>

#include "pwl/rational.hpp"

namespace pwl {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::string_view check_id)
      : rng_(seed ^ fnv1a(check_id)) {}

  // integer in [-999, 999]
  long small_int() { return static_cast<long>(rng_() % 1999) - 999; }

  long nonzero_int() {
    long v = small_int();
    while (v == 0) v = small_int();
    return v;
  }

  // uniform index in [0, n)
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(rng_() % n);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace pwl
