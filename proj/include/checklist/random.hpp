#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace checklist {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a run seed and a stable label so
// that adding a consumer never perturbs the streams of the others.
inline std::uint64_t fork_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::string_view label) {
  return Rng(fork_seed(seed, label));
}

}  // namespace checklist
