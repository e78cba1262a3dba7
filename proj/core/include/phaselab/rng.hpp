#pragma once

#include <cstdint>
#include <random>

namespace phaselab {

/// splitmix64 step; used to derive independent child seeds from a master seed
/// so results do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::uint64_t out = splitmix64(state);
  out ^= splitmix64(state);
  return out;
}

using Rng = std::mt19937_64;

} // namespace phaselab
