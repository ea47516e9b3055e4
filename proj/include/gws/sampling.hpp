#pragma once

#include "gws/types.hpp"

#include <cstdint>
#include <vector>

namespace gws {

/// Counter-based generator: every draw is a pure function of (seed, counter),
/// so parallel consumers can pull from disjoint counters and still reproduce
/// the serial stream bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one value; pairs are drawn internally).
  double next_normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Derive an independent stream for element k of the stream named `seed`.
std::uint64_t substream(std::uint64_t seed, std::uint64_t k);

/// k-th uniform unit direction on S^5 for this seed; pure function of (seed, k).
Vec6 unit_direction6(std::uint64_t seed, std::uint64_t k);

Vec3 unit_direction3(std::uint64_t seed, std::uint64_t k);

/// K uniform unit vectors on S^5, deterministic for a fixed seed.
std::vector<Vec6> sample_unit_directions(int K, std::uint64_t seed);

}  // namespace gws
