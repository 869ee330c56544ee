#pragma once

#include <cstdint>
#include <random>

namespace leocov {

// Every stochastic operation takes one of these explicitly; callers running in
// parallel own disjoint streams.
using RngStream = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Stream for realization `index` of a run seeded with `seed`:
//   mt19937_64( mix64( mix64(seed) ^ mix64(index + 0x9E3779B97F4A7C15) ) )
// Depends only on (seed, index), never on the worker that evaluates it.
RngStream derive_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace leocov
