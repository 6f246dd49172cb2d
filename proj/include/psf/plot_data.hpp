#ifndef PSF_PLOT_DATA_HPP
#define PSF_PLOT_DATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace psf {

/// One (sweep point, method) summary.
struct ResultRecord {
  double sweep_value = 0.0;
  std::string method;
  double mean_variance = 0.0;  // for phase-error runs: mean degradation ratio
  double std_error = 0.0;
  std::optional<double> bound;  // phase-error runs only
  int count = 0;                // realizations that contributed
  int skipped = 0;              // realizations where the method was not applicable
  nlohmann::json certificate = nlohmann::json::object();
  double wall_time = 0.0;  // seconds summed over realizations
};

nlohmann::json to_json(const ResultRecord& r);

/// FNV-1a over the compact serialisation of `config`.
std::uint64_t config_hash(const nlohmann::json& config);

struct PlotFiles {
  std::string csv;
  std::string sidecar;
};

/// Writes <dir>/<name>.csv (sweep_value, method, mean_variance, stderr and a
/// bound column when any record has one) and <dir>/<name>.json with the
/// config, seed, records and wall time. Both start with the config hash and
/// seed. Throws std::runtime_error on I/O failure.
PlotFiles emit_plot_data(const std::vector<ResultRecord>& records, const std::string& dir, const std::string& name,
                         const nlohmann::json& config, std::uint64_t seed, double wall_time);

/// Reads back a CSV written by emit_plot_data. Only the CSV columns are restored.
std::vector<ResultRecord> parse_plot_csv(const std::string& path);

}  // namespace psf

#endif  // PSF_PLOT_DATA_HPP
