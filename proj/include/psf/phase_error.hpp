#ifndef PSF_PHASE_ERROR_HPP
#define PSF_PHASE_ERROR_HPP

#include "psf/estimator.hpp"
#include "psf/rng.hpp"

namespace psf {

/// Above this sigma_p^2 the small-error bound is not expected to hold.
inline constexpr double kPhaseErrorWarnThreshold = 0.5;

/// a_i' = a_i exp(j Delta_i), Delta_i ~ N(0, sigma_p^2) i.i.d.
PhaseVector perturb_phases(const PhaseVector& a, double sigma_p_sq, Rng& rng);

struct PhaseErrorStats {
  double mean_ratio = 1.0;  // mean of Var(perturbed) / Var(a)
  double std_error = 0.0;
  int trials = 0;           // trials that contributed
  int skipped = 0;          // trials with a degenerate perturbed variance
  bool large_error_warning = false;  // sigma_p^2 > kPhaseErrorWarnThreshold
};

/// Monte Carlo degradation ratio for a fixed kernel; trial t draws from stream.child(t).
PhaseErrorStats phase_error_ratio_mc(const QuadraticKernel& b, const PhaseVector& a, double sigma_p_sq,
                                     int n_trials, const SeedStream& stream);

/// 1 + (1 - 1/N) sigma_p^2
double phase_error_bound(Eigen::Index n, double sigma_p_sq);

}  // namespace psf

#endif  // PSF_PHASE_ERROR_HPP
