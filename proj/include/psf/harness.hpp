#ifndef PSF_HARNESS_HPP
#define PSF_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "psf/plot_data.hpp"
#include "psf/scenario_io.hpp"

namespace psf {

enum class ExperimentKind { kVarVsN, kVarVsNFixedD, kVarVsM, kPhaseError, kSelectionSweep };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

struct ExperimentOptions {
  int sdp_rounds = 100;
  double sdp_tolerance = 1e-7;
  int acma_m = 2;
  int gain_phase_restarts = 20;
  int phase_error_trials = 3000;
  std::vector<double> phase_error_vars{0.1, 0.2};
  std::vector<int> selection_k{5, 10};
};

/// Sweep semantics by kind:
///   var-vs-N, var-vs-N-fixed-d, phase-error  sweep over N
///   var-vs-M                                  sweep over M
///   selection-sweep                           sweep over sigma_n^2
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kVarVsN;
  ScenarioTemplate scenario;
  std::vector<double> sweep;
  int realizations = 300;
  std::vector<std::string> methods;
  std::uint64_t seed = 0;
  ExperimentOptions options;
};

/// Methods accepted by a kind, and those run when the config lists none.
std::vector<std::string> available_methods(ExperimentKind kind);
std::vector<std::string> default_methods(ExperimentKind kind);

/// Throws ConfigError on malformed input, unknown kinds or unknown methods.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

struct RunOptions {
  int jobs = 1;
};

struct ExperimentResult {
  std::vector<ResultRecord> records;  // sweep order, then method order
  double wall_time = 0.0;
};

/// Runs every (sweep point, realization) with its own seed substream
/// derived from (seed, point, realization); results do not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& config, RunOptions options = {});

}  // namespace psf

#endif  // PSF_HARNESS_HPP
