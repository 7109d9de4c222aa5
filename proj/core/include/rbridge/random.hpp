#pragma once

#include <cstdint>
#include <random>

namespace rbridge {

using Rng = std::mt19937_64;

/// Independent child seed from (base, stream), via the splitmix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream tags so that the data, noise and tuning draws of one replication
/// never share a generator.
enum class Stream : std::uint64_t {
  design = 1,
  noise = 2,
  folds = 3,
  split = 4,
};

inline std::uint64_t derive_seed(std::uint64_t base, Stream s) {
  return derive_seed(base, static_cast<std::uint64_t>(s));
}

}  // namespace rbridge
