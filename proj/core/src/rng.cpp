#include "leocov/rng.hpp"

namespace leocov {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream derive_stream(std::uint64_t seed, std::uint64_t index) {
  return RngStream(mix64(mix64(seed) ^ mix64(index + 0x9E3779B97F4A7C15ULL)));
}

}  // namespace leocov
