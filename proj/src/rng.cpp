#include "psf/rng.hpp"

#include <cmath>

namespace psf {

// splitmix64 finaliser
std::uint64_t SeedStream::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeedStream SeedStream::child(std::uint64_t index) const {
  return SeedStream(mix(state_ ^ mix(index + 0x3c6ef372fe94f82bULL)));
}

SeedStream SeedStream::child(StreamTag tag) const {
  return SeedStream(mix(state_ ^ mix(static_cast<std::uint64_t>(tag) * 0xa54ff53a5f1d36f1ULL)));
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

Complex complex_gaussian(Rng& rng, double variance) {
  if (variance <= 0.0) return {0.0, 0.0};
  std::normal_distribution<double> dist(0.0, std::sqrt(variance / 2.0));
  const double re = dist(rng);
  const double im = dist(rng);
  return {re, im};
}

}  // namespace psf
