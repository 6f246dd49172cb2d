#ifndef PSF_BASELINES_HPP
#define PSF_BASELINES_HPP

#include <span>
#include <vector>

#include "psf/estimator.hpp"
#include "psf/network_model.hpp"
#include "psf/rng.hpp"

namespace psf {

/// No-feedback transmission: a_i = 1.
PhaseVector all_ones_phases(Eigen::Index n);

/// a_i = exp(-j arg H[0, i]), optimal when the FC has a single antenna.
PhaseVector conjugate_phases(const ChannelMatrix& channel);

/// aᴴHᴴ(H D V Dᴴ Hᴴ + sigma_n^2 I)^-1 H a for a general complex a (D = diag(a)).
double gain_phase_objective(const CVector& a, const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                            double fc_noise_var);

/// Gradient of gain_phase_objective with respect to (Re a, Im a), packed as
/// a complex vector g with g_i = d/dRe(a_i) + j d/dIm(a_i).
CVector gain_phase_gradient(const CVector& a, const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                            double fc_noise_var);

struct GainPhaseOptions {
  int n_restarts = 20;
  int max_iterations = 500;
  double tolerance = 1e-10;  // relative objective improvement to stop
};

struct GainPhaseResult {
  CVector weights;  // ‖a‖^2 <= N
  double objective = 0.0;
  double variance = 0.0;
  bool converged = false;  // the winning start met the stopping rule
  int starts = 0;
};

/// Local maximiser of the gain-and-phase objective subject to aᴴa <= N.
///
/// Projected gradient ascent with Armijo backtracking from several starts:
/// all-ones, then each of `initial_points`, then random points drawn from
/// stream.child(k), until n_restarts random starts have been used. Each
/// start only accepts non-decreasing steps, so the result is never worse
/// than any supplied initial point.
GainPhaseResult optimize_gain_phase(const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                                    double fc_noise_var, const SeedStream& stream,
                                    std::span<const CVector> initial_points = {}, GainPhaseOptions options = {});

inline constexpr Eigen::Index kBruteForceMaxSensors = 5;

struct BruteForceResult {
  PhaseVector phases;
  double objective = 0.0;
};

/// Exhaustive maximisation of aᴴBa over a_i in {exp(j 2 pi k / L)} with a_1 = 1.
/// Cost L^(N-1); N is limited to kBruteForceMaxSensors.
BruteForceResult brute_force_phases(const QuadraticKernel& b, int levels);

}  // namespace psf

#endif  // PSF_BASELINES_HPP
