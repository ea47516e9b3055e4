#include "gws/sampling.hpp"

#include <cmath>

namespace gws {

double SplitMix64::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit_open();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t k) {
  // One extra mixing round so adjacent k do not correlate.
  SplitMix64 g(seed ^ (k * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return g.next_u64();
}

Vec6 unit_direction6(std::uint64_t seed, std::uint64_t k) {
  SplitMix64 g(substream(seed, k));
  Vec6 u;
  for (int i = 0; i < 6; ++i) u[i] = g.next_normal();
  double n = u.norm();
  while (n < 1e-12) {  // astronomically unlikely; redraw
    for (int i = 0; i < 6; ++i) u[i] = g.next_normal();
    n = u.norm();
  }
  return u / n;
}

Vec3 unit_direction3(std::uint64_t seed, std::uint64_t k) {
  SplitMix64 g(substream(seed, k));
  Vec3 u;
  for (int i = 0; i < 3; ++i) u[i] = g.next_normal();
  double n = u.norm();
  while (n < 1e-12) {
    for (int i = 0; i < 3; ++i) u[i] = g.next_normal();
    n = u.norm();
  }
  return u / n;
}

std::vector<Vec6> sample_unit_directions(int K, std::uint64_t seed) {
  std::vector<Vec6> out(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) out[static_cast<std::size_t>(k)] = unit_direction6(seed, static_cast<std::uint64_t>(k));
  return out;
}

}  // namespace gws
