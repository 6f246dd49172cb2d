#include "psf/network_model.hpp"

#include <cmath>
#include <string>

namespace psf {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("SensorScenario: " + message);
}

}  // namespace

void SensorScenario::validate() const {
  require(n_sensors >= 1, "n_sensors must be positive");
  require(n_antennas >= 1, "n_antennas must be positive");
  require(distances.size() == n_sensors, "distances length must equal n_sensors");
  require(sensor_noise_vars.size() == n_sensors, "sensor_noise_vars length must equal n_sensors");
  require(std::isfinite(path_loss_exp) && path_loss_exp >= 0.0, "path_loss_exp must be >= 0");
  require(std::isfinite(fc_noise_var) && fc_noise_var > 0.0, "fc_noise_var must be > 0");
  for (Eigen::Index i = 0; i < n_sensors; ++i) {
    require(std::isfinite(distances[i]) && distances[i] > 0.0, "distances must be > 0");
    require(std::isfinite(sensor_noise_vars[i]) && sensor_noise_vars[i] > 0.0,
            "sensor_noise_vars must be > 0");
  }
  if (channel) {
    require(channel->rows() == n_antennas && channel->cols() == n_sensors,
            "explicit channel must be n_antennas x n_sensors");
  }
}

ChannelMatrix generate_channel(const SensorScenario& scenario, Rng& rng) {
  scenario.validate();
  if (scenario.channel) return ChannelMatrix{*scenario.channel};

  const int m = scenario.n_antennas;
  const int n = scenario.n_sensors;
  ChannelMatrix out{CMatrix(m, n)};
  // Column-major draw order: all antennas of sensor 0, then sensor 1, ...
  for (int i = 0; i < n; ++i) {
    const double gain = std::pow(scenario.distances[i], -scenario.path_loss_exp);
    for (int j = 0; j < m; ++j) out.h(j, i) = std::polar(gain, uniform(rng, 0.0, kTwoPi));
  }
  return out;
}

ChannelMatrix generate_channel(const SensorScenario& scenario) {
  Rng rng = SeedStream(scenario.seed).child(StreamTag::kChannel).engine();
  return generate_channel(scenario, rng);
}

ReceivedSignal generate_received(Complex theta, const ChannelMatrix& channel, const PhaseVector& a,
                                 const SensorScenario& scenario, Rng& rng, SignalOptions options) {
  const Eigen::Index m = channel.n_antennas();
  const Eigen::Index n = channel.n_sensors();
  if (a.size() != n) throw std::invalid_argument("generate_received: phase vector length != N");
  if (scenario.sensor_noise_vars.size() != n)
    throw std::invalid_argument("generate_received: noise variance length != N");

  CVector y = channel.h * a.entries() * theta;
  if (!options.noise_free) {
    CVector dv(n);
    for (Eigen::Index i = 0; i < n; ++i)
      dv[i] = a[i] * complex_gaussian(rng, scenario.sensor_noise_vars[i]);
    y += channel.h * dv;
    for (Eigen::Index j = 0; j < m; ++j) y[j] += complex_gaussian(rng, scenario.fc_noise_var);
  }
  return ReceivedSignal{std::move(y), theta};
}

}  // namespace psf
