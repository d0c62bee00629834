#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stump {

// All stochastic code draws from a shared 64-bit Mersenne generator through
// the helpers below.  Distributions are hand-rolled so that a given seed
// produces the same stream on every platform; the standard distribution
// classes are allowed to differ between library implementations.
using Rng = std::mt19937_64;

// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

// Uniform integer in [0, n).  Rejection-free modulo is fine here: n is tiny
// (patch sizes) compared to 2^64, so the bias is far below double precision.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return rng() % n;
}

// Standard exponential via inversion.  uniform_unit never returns 1, so the
// log argument stays positive.
inline double exponential_unit(Rng& rng) {
  return -std::log(1.0 - uniform_unit(rng));
}

// splitmix64 finalizer, used to derive independent sub-seeds from a master
// seed without burning generator state.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace stump
