#include "psf/estimator.hpp"

#include <cmath>
#include <limits>

#include "psf/linalg.hpp"

namespace psf {

namespace {

CMatrix fc_covariance(const CMatrix& h, const RVector& v, double fc_noise_var) {
  CMatrix c = h * v.asDiagonal() * h.adjoint();
  c.diagonal().array() += fc_noise_var;
  return linalg::hermitize(c);
}

void check_inputs(const ChannelMatrix& channel, const RVector& v, double fc_noise_var) {
  if (!(fc_noise_var > 0.0)) throw std::invalid_argument("fc_noise_var must be > 0");
  if (v.size() != channel.n_sensors())
    throw std::invalid_argument("sensor noise variance length != number of sensors");
  if ((v.array() < 0.0).any()) throw std::invalid_argument("sensor noise variances must be >= 0");
}

}  // namespace

QuadraticKernel::QuadraticKernel(CMatrix b) {
  if (b.rows() != b.cols()) throw std::invalid_argument("QuadraticKernel: matrix must be square");
  b_ = linalg::hermitize(b);
}

QuadraticKernel quadratic_kernel(const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                                 double fc_noise_var) {
  check_inputs(channel, sensor_noise_vars, fc_noise_var);
  const CMatrix& h = channel.h;
  const Eigen::Index m = h.rows();
  const Eigen::Index n = h.cols();

  if (n < m) {
    const CMatrix g = h.adjoint() * h;
    CMatrix inner = sensor_noise_vars.asDiagonal() * g;
    inner.diagonal().array() += fc_noise_var;
    // B = G inner^-1  <=>  innerᵀ Bᵀ = Gᵀ
    const CMatrix bt = inner.transpose().partialPivLu().solve(g.transpose());
    return QuadraticKernel(bt.transpose());
  }

  const Eigen::LLT<CMatrix> llt(fc_covariance(h, sensor_noise_vars, fc_noise_var));
  const CMatrix w = llt.matrixL().solve(h);
  return QuadraticKernel(w.adjoint() * w);
}

Complex ml_estimate(const ReceivedSignal& y, const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                    double fc_noise_var, const PhaseVector& a) {
  check_inputs(channel, sensor_noise_vars, fc_noise_var);
  if (a.size() != channel.n_sensors()) throw std::invalid_argument("ml_estimate: phase vector length != N");
  if (y.samples.size() != channel.n_antennas())
    throw std::invalid_argument("ml_estimate: signal length != M");

  const Eigen::LLT<CMatrix> llt(fc_covariance(channel.h, sensor_noise_vars, fc_noise_var));
  const CVector ha = channel.h * a.entries();
  const CVector lha = llt.matrixL().solve(ha);
  const CVector ly = llt.matrixL().solve(y.samples);
  const double denom = lha.squaredNorm();

  const CMatrix lh = llt.matrixL().solve(channel.h);
  const double trace_b = lh.squaredNorm();
  if (!(denom > kDegenerateFraction * trace_b))
    throw UnestimableError("ml_estimate: aᴴBa is numerically zero");
  return lha.dot(ly) / denom;
}

double estimate_variance(const PhaseVector& a, const QuadraticKernel& b) {
  if (a.size() != b.size()) throw std::invalid_argument("estimate_variance: size mismatch");
  const double q = linalg::quad_form(a.entries(), b.matrix());
  if (!(q > kDegenerateFraction * b.trace()))
    throw UnestimableError("estimate_variance: aᴴBa is numerically zero");
  return 1.0 / q;
}

double variance_lower_bound(const QuadraticKernel& b, Eigen::Index n) {
  const double lmax = linalg::lambda_max(b.matrix());
  if (!(lmax > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (static_cast<double>(n) * lmax);
}

EstimateReport make_report(const ReceivedSignal& y, const ChannelMatrix& channel,
                           const RVector& sensor_noise_vars, double fc_noise_var, const PhaseVector& a) {
  const QuadraticKernel b = quadratic_kernel(channel, sensor_noise_vars, fc_noise_var);
  EstimateReport r;
  r.estimate = ml_estimate(y, channel, sensor_noise_vars, fc_noise_var, a);
  r.variance = estimate_variance(a, b);
  r.lower_bound = variance_lower_bound(b, a.size());
  return r;
}

}  // namespace psf
