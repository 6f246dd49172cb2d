#ifndef PSF_SCENARIO_IO_HPP
#define PSF_SCENARIO_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "psf/network_model.hpp"

namespace psf {

/// Per-sensor quantity given either explicitly or as a distribution:
///   [1.0, 2.5, ...]                          explicit, length N
///   {"dist": "uniform", "lo": 3, "hi": 20}   i.i.d. U[lo, hi)
///   {"dist": "constant", "value": 11.5}      same value for every sensor
///   11.5                                      shorthand for constant
class Distribution {
 public:
  enum class Kind { kExplicit, kUniform, kConstant };

  static Distribution explicit_values(RVector values);
  static Distribution uniform(double lo, double hi);
  static Distribution constant(double value);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const RVector& values() const { return values_; }

  /// Draws n values. Explicit distributions require n == values().size().
  RVector sample(int n, Rng& rng) const;

  nlohmann::json to_json() const;
  static Distribution from_json(const nlohmann::json& j, const std::string& field);

 private:
  Kind kind_ = Kind::kConstant;
  RVector values_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Scenario as written in a config file; distributions are resolved by realize().
struct ScenarioTemplate {
  int n_sensors = 0;
  int n_antennas = 0;
  Distribution distances = Distribution::constant(1.0);
  double path_loss_exp = 1.0;
  Distribution sensor_noise_vars = Distribution::constant(1.0);
  double fc_noise_var = 1.0;
  std::uint64_t seed = 0;
  std::optional<CMatrix> channel;

  /// Draws concrete per-sensor values. Distances are drawn before noise
  /// variances, each from its own substream of `stream`.
  SensorScenario realize(const SeedStream& stream) const;
};

ScenarioTemplate scenario_template_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioTemplate& t);

/// Concrete scenario <-> JSON with explicit arrays.
nlohmann::json to_json(const SensorScenario& s);
SensorScenario scenario_from_json(const nlohmann::json& j);

/// Reads a scenario file; distribution fields are realized from the file's seed.
SensorScenario load_scenario(const std::string& path);

/// Thrown for malformed scenario or config documents.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psf

#endif  // PSF_SCENARIO_IO_HPP
