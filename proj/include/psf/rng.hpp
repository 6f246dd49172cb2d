#ifndef PSF_RNG_HPP
#define PSF_RNG_HPP

#include <cstdint>
#include <random>

#include "psf/types.hpp"

namespace psf {

using Rng = std::mt19937_64;

/// Purpose tags for substream derivation. Values are part of the
/// reproducibility contract; do not renumber.
enum class StreamTag : std::uint64_t {
  kScenario = 1,
  kChannel = 2,
  kSignal = 3,
  kRounding = 4,
  kRestart = 5,
  kPhaseError = 6,
  kSelection = 7,
  kSweepPoint = 8,
  kRealization = 9,
  kTrial = 10,
};

/// Hierarchical, order-independent seed derivation.
///
/// A SeedStream is a 64-bit value; children are derived by hashing the
/// parent with an index or a purpose tag, so the stream for
/// (point 3, realization 17, rounding) is the same no matter which
/// thread computes it or in which order.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t master) : state_(master) {}

  SeedStream child(std::uint64_t index) const;
  SeedStream child(StreamTag tag) const;
  SeedStream child(StreamTag tag, std::uint64_t index) const { return child(tag).child(index); }

  Rng engine() const { return Rng(mix(state_ ^ 0x6a09e667f3bcc909ULL)); }
  std::uint64_t value() const { return state_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t state_;
};

/// Uniform draw on [lo, hi).
double uniform(Rng& rng, double lo, double hi);

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance
/// (real and imaginary parts each have variance/2).
Complex complex_gaussian(Rng& rng, double variance);

}  // namespace psf

#endif  // PSF_RNG_HPP
