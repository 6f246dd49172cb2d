#include <doctest.h>

#include <cmath>

#include "psf/network_model.hpp"
#include "psf/scenario_io.hpp"

using namespace psf;

namespace {

SensorScenario make_scenario(int n, int m, double d, double alpha) {
  SensorScenario s;
  s.n_sensors = n;
  s.n_antennas = m;
  s.distances = RVector::Constant(n, d);
  s.path_loss_exp = alpha;
  s.sensor_noise_vars = RVector::Constant(n, 0.05);
  s.fc_noise_var = 0.1;
  s.seed = 11;
  return s;
}

}  // namespace

TEST_CASE("unit distances give unit-modulus channel entries") {
  const ChannelMatrix h = generate_channel(make_scenario(7, 3, 1.0, 2.5));
  CHECK(h.n_antennas() == 3);
  CHECK(h.n_sensors() == 7);
  CHECK((h.h.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("zero path-loss exponent gives unit modulus for any distance") {
  SensorScenario s = make_scenario(5, 4, 1.0, 0.0);
  s.distances << 3.0, 7.5, 11.0, 19.9, 0.2;
  const ChannelMatrix h = generate_channel(s);
  CHECK((h.h.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("column norm law and uniform entry phases") {
  const ChannelMatrix h = generate_channel(make_scenario(1, 2048, 2.0, 1.0));
  CHECK(h.column(0).squaredNorm() / 2048.0 == doctest::Approx(0.25).epsilon(1e-12));
  const Complex mean = (h.h.col(0) * 2.0).mean();  // unit-modulus phases
  CHECK(std::abs(mean) < 0.1);

  SensorScenario s = make_scenario(4, 6, 1.0, 1.5);
  s.distances << 3.0, 5.0, 8.0, 13.0;
  const ChannelMatrix g = generate_channel(s);
  for (int i = 0; i < 4; ++i)
    CHECK(g.column(i).squaredNorm() == doctest::Approx(6.0 * std::pow(s.distances[i], -3.0)).epsilon(1e-12));
}

TEST_CASE("generation is reproducible for a given seed") {
  const SensorScenario s = make_scenario(6, 3, 4.0, 1.0);
  const ChannelMatrix a = generate_channel(s);
  const ChannelMatrix b = generate_channel(s);
  CHECK(a.h == b.h);
  SensorScenario t = s;
  t.seed = 12;
  CHECK(generate_channel(t).h != a.h);

  Rng r1(5), r2(5);
  const PhaseVector ones = PhaseVector::ones(6);
  const ReceivedSignal y1 = generate_received(Complex(1, 2), a, ones, s, r1);
  const ReceivedSignal y2 = generate_received(Complex(1, 2), a, ones, s, r2);
  CHECK(y1.samples == y2.samples);
}

TEST_CASE("explicit channel bypasses the generator") {
  SensorScenario s = make_scenario(2, 2, 1.0, 1.0);
  CMatrix h(2, 2);
  h << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(0.5, 0.5);
  s.channel = h;
  CHECK(generate_channel(s).h == h);
  s.channel = CMatrix::Ones(3, 2);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("noise-free received signal is H a theta") {
  const SensorScenario s = make_scenario(5, 3, 2.0, 1.0);
  const ChannelMatrix h = generate_channel(s);
  Rng rng(3);
  RVector ang(5);
  ang << 0.1, 1.0, -2.0, 3.0, 0.5;
  const PhaseVector a = PhaseVector::from_angles(ang);
  const Complex theta(0.7, -1.3);
  const ReceivedSignal y = generate_received(theta, h, a, s, rng, SignalOptions{true});
  CHECK(y.samples.size() == 3);
  CHECK((y.samples - h.h * a.entries() * theta).norm() == 0.0);
  CHECK(y.truth == theta);
}

TEST_CASE("single link passthrough") {
  SensorScenario s = make_scenario(1, 1, 1.0, 0.0);
  const ChannelMatrix h = generate_channel(s);
  Rng rng(1);
  const ReceivedSignal y = generate_received(Complex(1, 0), h, PhaseVector::ones(1), s, rng, SignalOptions{true});
  CHECK(std::abs(y.samples[0] - h.h(0, 0)) == 0.0);
  CHECK(std::abs(std::abs(y.samples[0]) - 1.0) < 1e-15);
}

TEST_CASE("received noise is zero mean with covariance H V Hᴴ + sigma_n^2 I") {
  SensorScenario s = make_scenario(3, 2, 1.0, 1.0);
  s.distances << 1.0, 2.0, 3.0;
  s.sensor_noise_vars << 0.5, 1.0, 2.0;
  s.fc_noise_var = 0.3;
  const ChannelMatrix h = generate_channel(s);
  RVector ang(3);
  ang << 0.3, -1.0, 2.0;
  const PhaseVector a = PhaseVector::from_angles(ang);
  Rng rng(99);
  const int draws = 10000;
  CVector mean = CVector::Zero(2);
  CMatrix cov = CMatrix::Zero(2, 2);
  for (int t = 0; t < draws; ++t) {
    const CVector y = generate_received(Complex(0, 0), h, a, s, rng).samples;
    mean += y;
    cov += y * y.adjoint();
  }
  mean /= draws;
  cov /= draws;
  const CMatrix expected = h.h * s.sensor_noise_vars.asDiagonal() * h.h.adjoint() +
                           s.fc_noise_var * CMatrix::Identity(2, 2);
  CHECK(mean.norm() < 5.0 * std::sqrt(expected.trace().real() / draws));
  CHECK((cov - expected).norm() <= 0.05 * expected.norm());
}

TEST_CASE("zero-signal sample mean bound") {
  SensorScenario s = make_scenario(4, 3, 2.0, 1.0);
  const ChannelMatrix h = generate_channel(s);
  Rng rng(7);
  const int draws = 10000;
  CVector mean = CVector::Zero(3);
  for (int t = 0; t < draws; ++t) mean += generate_received(Complex(0, 0), h, PhaseVector::ones(4), s, rng).samples;
  mean /= draws;
  const double tr = (h.h * s.sensor_noise_vars.asDiagonal() * h.h.adjoint()).trace().real() + 3 * s.fc_noise_var;
  // E‖mean‖² = tr(C) / draws
  CHECK(mean.norm() < 5.0 * std::sqrt(tr / draws));
}

TEST_CASE("scenario validation") {
  SensorScenario s = make_scenario(3, 2, 1.0, 1.0);
  CHECK_NOTHROW(s.validate());
  SensorScenario bad = s;
  bad.distances[1] = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.sensor_noise_vars[0] = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.fc_noise_var = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.distances = RVector::Ones(2);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.path_loss_exp = -0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("received signal rejects mismatched dimensions") {
  const SensorScenario s = make_scenario(3, 2, 1.0, 1.0);
  const ChannelMatrix h = generate_channel(s);
  Rng rng(1);
  CHECK_THROWS_AS(generate_received(Complex(1, 0), h, PhaseVector::ones(4), s, rng), std::invalid_argument);
}

TEST_CASE("scenario JSON with distribution descriptors") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "n_sensors": 50, "n_antennas": 4,
    "distances": {"dist": "uniform", "lo": 3, "hi": 20},
    "sensor_noise_vars": {"dist": "uniform", "lo": 0.01, "hi": 0.1},
    "fc_noise_var": 0.1, "seed": 42})");
  const SensorScenario s = scenario_from_json(j);
  CHECK(s.n_sensors == 50);
  CHECK(s.path_loss_exp == 1.0);
  CHECK(s.distances.minCoeff() >= 3.0);
  CHECK(s.distances.maxCoeff() < 20.0);
  CHECK(s.sensor_noise_vars.minCoeff() >= 0.01);
  CHECK(s.sensor_noise_vars.maxCoeff() < 0.1);

  const SensorScenario again = scenario_from_json(to_json(s));
  CHECK(again.distances == s.distances);
  CHECK(again.sensor_noise_vars == s.sensor_noise_vars);
  CHECK(again.seed == s.seed);

  nlohmann::json c = j;
  c["distances"] = 11.5;
  c["sensor_noise_vars"] = nlohmann::json{{"dist", "constant"}, {"value", 0.05}};
  const SensorScenario k = scenario_from_json(c);
  CHECK((k.distances.array() == 11.5).all());
  CHECK((k.sensor_noise_vars.array() == 0.05).all());

  nlohmann::json bad = j;
  bad["distances"] = nlohmann::json::array({1.0, 2.0});
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);
  bad = j;
  bad.erase("fc_noise_var");
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);
  bad = j;
  bad["distances"] = nlohmann::json{{"dist", "gamma"}};
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);
}

TEST_CASE("scenario JSON with explicit channel") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "n_sensors": 2, "n_antennas": 1, "distances": [1, 1], "sensor_noise_vars": [0.1, 0.2],
    "fc_noise_var": 1.0,
    "channel": {"re": [[1, 0]], "im": [[0, 2]]}})");
  const SensorScenario s = scenario_from_json(j);
  REQUIRE(s.channel.has_value());
  CHECK(generate_channel(s).h(0, 1) == Complex(0, 2));
  const SensorScenario again = scenario_from_json(to_json(s));
  CHECK(*again.channel == *s.channel);
}
