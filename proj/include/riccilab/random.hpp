#pragma once

#include <cstdint>

namespace riccilab::rng {

/// splitmix64: tiny, dependency-free, and bit-identical everywhere — sample
/// points and basis coefficients must reproduce exactly across platforms, so
/// the distribution-dependent stdlib engines are out.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform in [0, 1) with 53 random bits.
inline double unit_double(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

/// Uniform in [lo, hi).
inline double uniform(std::uint64_t& state, double lo, double hi) {
  return lo + (hi - lo) * unit_double(state);
}

}  // namespace riccilab::rng
