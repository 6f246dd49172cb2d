#ifndef PSF_NETWORK_MODEL_HPP
#define PSF_NETWORK_MODEL_HPP

#include <cstdint>
#include <optional>

#include "psf/rng.hpp"
#include "psf/types.hpp"

namespace psf {

/// Geometry, noise levels and sizes of one sensor network.
struct SensorScenario {
  int n_sensors = 0;
  int n_antennas = 0;
  RVector distances;          // d_i > 0, length N
  double path_loss_exp = 1.0;  // alpha >= 0
  RVector sensor_noise_vars;  // sigma_v,i^2 > 0, length N
  double fc_noise_var = 0.0;  // sigma_n^2 > 0
  std::uint64_t seed = 0;

  /// Explicit M x N channel that bypasses the path-loss generator.
  std::optional<CMatrix> channel;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  /// diag(V) as a vector; convenience alias for sensor_noise_vars.
  const RVector& noise_vars() const { return sensor_noise_vars; }
};

/// M x N matrix of sensor-to-FC channels; column i is h_i.
struct ChannelMatrix {
  CMatrix h;

  Eigen::Index n_antennas() const { return h.rows(); }
  Eigen::Index n_sensors() const { return h.cols(); }
  auto column(Eigen::Index i) const { return h.col(i); }
};

struct ReceivedSignal {
  CVector samples;  // y, length M
  Complex truth;    // theta used to generate y
};

/// H[j,i] = d_i^-alpha * exp(j * gamma_ij), gamma_ij ~ U[0, 2pi).
/// If the scenario carries an explicit channel, that matrix is returned.
ChannelMatrix generate_channel(const SensorScenario& scenario, Rng& rng);

/// Same, drawing from the scenario's own seed.
ChannelMatrix generate_channel(const SensorScenario& scenario);

struct SignalOptions {
  bool noise_free = false;
};

/// y = H a theta + H D v + n, with v ~ CN(0, V) and n ~ CN(0, sigma_n^2 I).
ReceivedSignal generate_received(Complex theta, const ChannelMatrix& channel, const PhaseVector& a,
                                 const SensorScenario& scenario, Rng& rng, SignalOptions options = {});

}  // namespace psf

#endif  // PSF_NETWORK_MODEL_HPP
