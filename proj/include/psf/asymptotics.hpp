#ifndef PSF_ASYMPTOTICS_HPP
#define PSF_ASYMPTOTICS_HPP

#include "psf/network_model.hpp"

namespace psf {

/// Large-N lower bound from sample averages:
///   (sum_i sigma_v,i^2 / d_i^2a + sigma_n^2) / (N sum_i 1/d_i^2a).
double large_n_lower_bound(const SensorScenario& scenario);

/// Variance with conjugate phasing and a single FC antenna:
///   (sum_i sigma_v,i^2 / d_i^2a + sigma_n^2) / (sum_i 1/d_i^a)^2.
double single_antenna_upper_bound(const SensorScenario& scenario);

/// (sum_i 1/d_i^a)^2 / (N sum_i 1/d_i^2a), in (0, 1]; 1 iff all d_i are equal.
double bound_ratio(const SensorScenario& scenario);

/// Var{1/d^a} / E{1/d^2a} over the scenario's distances, with 1/N
/// normalisation so that bound_ratio + moment_ratio = 1 exactly.
double moment_ratio(const SensorScenario& scenario);

/// Large-M limit 1 / (M sum_i 1/(d_i^2a sigma_n^2 + M sigma_v,i^2)).
/// Uses the scenario's distances and noise levels but the given M.
double large_m_variance(const SensorScenario& scenario, int n_antennas);

/// E{d^-p} for d ~ U[lo, hi], 0 < lo < hi.
double uniform_inverse_moment(double lo, double hi, double p);

/// Population counterparts of bound_ratio and moment_ratio for d ~ U[lo, hi].
double population_bound_ratio(double lo, double hi, double path_loss_exp);
double population_moment_ratio(double lo, double hi, double path_loss_exp);

}  // namespace psf

#endif  // PSF_ASYMPTOTICS_HPP
