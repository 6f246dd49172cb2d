#include "psf/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace psf {

namespace {

// 1 / d_i^p for every sensor.
RVector inverse_powers(const SensorScenario& s, double p) {
  s.validate();
  return s.distances.array().pow(-p).matrix();
}

double numerator(const SensorScenario& s) {
  const RVector g2 = inverse_powers(s, 2.0 * s.path_loss_exp);
  return s.sensor_noise_vars.dot(g2) + s.fc_noise_var;
}

}  // namespace

double large_n_lower_bound(const SensorScenario& scenario) {
  const RVector g2 = inverse_powers(scenario, 2.0 * scenario.path_loss_exp);
  return numerator(scenario) / (scenario.n_sensors * g2.sum());
}

double single_antenna_upper_bound(const SensorScenario& scenario) {
  const double s1 = inverse_powers(scenario, scenario.path_loss_exp).sum();
  return numerator(scenario) / (s1 * s1);
}

double bound_ratio(const SensorScenario& scenario) {
  const double s1 = inverse_powers(scenario, scenario.path_loss_exp).sum();
  const double s2 = inverse_powers(scenario, 2.0 * scenario.path_loss_exp).sum();
  return s1 * s1 / (scenario.n_sensors * s2);
}

double moment_ratio(const SensorScenario& scenario) {
  const RVector g = inverse_powers(scenario, scenario.path_loss_exp);
  const double mean = g.mean();
  const double second = g.squaredNorm() / static_cast<double>(g.size());
  return (second - mean * mean) / second;
}

double large_m_variance(const SensorScenario& scenario, int n_antennas) {
  if (n_antennas < 1) throw std::invalid_argument("large_m_variance: M must be >= 1");
  scenario.validate();
  const RVector d2 = scenario.distances.array().pow(2.0 * scenario.path_loss_exp).matrix();
  const double m = n_antennas;
  const double sum =
      (d2.array() * scenario.fc_noise_var + m * scenario.sensor_noise_vars.array()).inverse().sum();
  return 1.0 / (m * sum);
}

double uniform_inverse_moment(double lo, double hi, double p) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("uniform_inverse_moment: need 0 < lo < hi");
  if (std::abs(p - 1.0) < 1e-12) return std::log(hi / lo) / (hi - lo);
  return (std::pow(hi, 1.0 - p) - std::pow(lo, 1.0 - p)) / ((1.0 - p) * (hi - lo));
}

double population_bound_ratio(double lo, double hi, double path_loss_exp) {
  const double m1 = uniform_inverse_moment(lo, hi, path_loss_exp);
  const double m2 = uniform_inverse_moment(lo, hi, 2.0 * path_loss_exp);
  return m1 * m1 / m2;
}

double population_moment_ratio(double lo, double hi, double path_loss_exp) {
  return 1.0 - population_bound_ratio(lo, hi, path_loss_exp);
}

}  // namespace psf
