#ifndef PSF_PHASE_ACMA_HPP
#define PSF_PHASE_ACMA_HPP

#include "psf/estimator.hpp"
#include "psf/types.hpp"

namespace psf {

inline constexpr int kDefaultAcmaDimension = 2;

struct AcmaResult {
  PhaseVector phases;
  int m = 0;
  double objective = 0.0;  // aᴴBa
  int zero_entries = 0;    // entries of â that were exactly zero (set to 1)
  bool repeated_dominant = false;  // Q̃ + Q̃ᴴ had a repeated dominant singular value
};

/// Closed-form constant-modulus phases from the top-m eigenspace of B.
///
/// With U_m the top-m eigenvectors and ũ_i the i-th row of U_m (conjugated),
/// stack P = [ (conj(ũ_i) ⊗ ũ_i)ᴴ, -1 ] (N x (m^2+1)), take the right
/// singular vector q of the smallest singular value, reshape its first m^2
/// entries column-wise into Q̃, let w be the dominant singular vector of
/// Q̃ + Q̃ᴴ and return a_i = exp(j arg (U_m w)_i).
///
/// Requires N > m^2 and 1 <= m <= N.
AcmaResult acma_phases(const QuadraticKernel& b, int m = kDefaultAcmaDimension);

/// Tries every m = 1..M with N > m^2 and keeps the smallest variance
/// (largest aᴴBa); ties go to the smaller m. Requires N > 1.
AcmaResult acma_best_m(const QuadraticKernel& b, int n_antennas, Eigen::Index n_sensors);

}  // namespace psf

#endif  // PSF_PHASE_ACMA_HPP
