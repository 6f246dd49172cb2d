#ifndef PSF_ESTIMATOR_HPP
#define PSF_ESTIMATOR_HPP

#include "psf/network_model.hpp"
#include "psf/types.hpp"

namespace psf {

/// Hermitian PSD kernel B = Hᴴ (H V Hᴴ + sigma_n^2 I)^-1 H of the
/// variance objective; Var(theta_hat) = 1 / (aᴴ B a).
class QuadraticKernel {
 public:
  QuadraticKernel() = default;

  /// Hermitizes `b` and checks that it is square.
  explicit QuadraticKernel(CMatrix b);

  const CMatrix& matrix() const { return b_; }
  Eigen::Index size() const { return b_.rows(); }
  double trace() const { return b_.diagonal().real().sum(); }

  QuadraticKernel scaled(double c) const { return QuadraticKernel(b_ * c); }

 private:
  CMatrix b_;
};

struct EstimateReport {
  Complex estimate;
  double variance = 0.0;
  double lower_bound = 0.0;
};

/// Builds B. Uses a Cholesky factor of the M x M covariance when N >= M and
/// the push-through form B = G (V G + sigma_n^2 I)^-1, G = HᴴH, when N < M.
/// Requires fc_noise_var > 0; sensor variances may be zero.
QuadraticKernel quadratic_kernel(const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                                 double fc_noise_var);

/// aᴴBa below this fraction of tr(B) is treated as unestimable.
inline constexpr double kDegenerateFraction = 1e-14;

/// ML estimate aᴴHᴴC⁻¹y / aᴴHᴴC⁻¹Ha with C = HVHᴴ + sigma_n^2 I.
/// Throws UnestimableError when the denominator is degenerate.
Complex ml_estimate(const ReceivedSignal& y, const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                    double fc_noise_var, const PhaseVector& a);

/// 1 / (aᴴBa). Throws UnestimableError when aᴴBa is degenerate.
double estimate_variance(const PhaseVector& a, const QuadraticKernel& b);

/// 1 / (N lambda_max(B)); +infinity when lambda_max <= 0. Not achievable
/// in general since B rarely has a unit-modulus principal eigenvector.
double variance_lower_bound(const QuadraticKernel& b, Eigen::Index n);

EstimateReport make_report(const ReceivedSignal& y, const ChannelMatrix& channel,
                           const RVector& sensor_noise_vars, double fc_noise_var, const PhaseVector& a);

}  // namespace psf

#endif  // PSF_ESTIMATOR_HPP
