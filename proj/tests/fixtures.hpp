// Scenario builders shared by the tests.
#ifndef PSF_TESTS_FIXTURES_HPP
#define PSF_TESTS_FIXTURES_HPP

#include "psf/estimator.hpp"
#include "psf/scenario_io.hpp"

namespace fixture {

struct Instance {
  psf::SensorScenario scenario;
  psf::ChannelMatrix channel;
  psf::QuadraticKernel kernel;
};

// d_i ~ U[d_lo, d_hi], sigma_v,i^2 ~ U[v_lo, v_hi], alpha = 1.
inline Instance make(int n, int m, std::uint64_t seed, double fc_noise = 0.1, double v_lo = 0.01,
                     double v_hi = 0.1, double d_lo = 3.0, double d_hi = 20.0) {
  psf::ScenarioTemplate t;
  t.n_sensors = n;
  t.n_antennas = m;
  t.distances = d_lo == d_hi ? psf::Distribution::constant(d_lo) : psf::Distribution::uniform(d_lo, d_hi);
  t.sensor_noise_vars = psf::Distribution::uniform(v_lo, v_hi);
  t.fc_noise_var = fc_noise;
  const psf::SeedStream stream(seed);
  Instance out;
  out.scenario = t.realize(stream);
  psf::Rng rng = stream.child(psf::StreamTag::kChannel).engine();
  out.channel = psf::generate_channel(out.scenario, rng);
  out.kernel = psf::quadratic_kernel(out.channel, out.scenario.sensor_noise_vars, out.scenario.fc_noise_var);
  return out;
}

// [[a, b e^{j beta}], [b e^{-j beta}, c]]
inline psf::QuadraticKernel two_sensor(double a, double b, double c, double beta) {
  psf::CMatrix m(2, 2);
  m << a, b * std::polar(1.0, beta), b * std::polar(1.0, -beta), c;
  return psf::QuadraticKernel(m);
}

}  // namespace fixture

#endif  // PSF_TESTS_FIXTURES_HPP
