#include "psf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "psf/asymptotics.hpp"
#include "psf/baselines.hpp"
#include "psf/estimator.hpp"
#include "psf/linalg.hpp"
#include "psf/phase_acma.hpp"
#include "psf/phase_error.hpp"
#include "psf/phase_sdp.hpp"
#include "psf/selection.hpp"

namespace psf {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::kVarVsN, "var-vs-N"},
    {ExperimentKind::kVarVsNFixedD, "var-vs-N-fixed-d"},
    {ExperimentKind::kVarVsM, "var-vs-M"},
    {ExperimentKind::kPhaseError, "phase-error"},
    {ExperimentKind::kSelectionSweep, "selection-sweep"},
};

bool is_variance_kind(ExperimentKind k) {
  return k == ExperimentKind::kVarVsN || k == ExperimentKind::kVarVsNFixedD || k == ExperimentKind::kVarVsM;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field ") + key + ": " + e.what());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Per (realization, label) outcome; NaN value means not applicable.
struct Sample {
  double value = kNaN;
  double gap = kNaN;
  bool flag = false;
  double seconds = 0.0;
};

template <typename F>
void timed(Sample& s, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    f();
  } catch (const UnestimableError&) {
    s.value = kNaN;
  }
  s.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool wants(const std::vector<std::string>& methods, const std::string& m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

std::vector<std::string> record_labels(const ExperimentConfig& c) {
  std::vector<std::string> labels;
  for (const auto& m : c.methods) {
    if (c.kind == ExperimentKind::kPhaseError) {
      for (double v : c.options.phase_error_vars) labels.push_back(m + ":" + fmt(v));
    } else if (c.kind == ExperimentKind::kSelectionSweep && m != "all-sensors") {
      for (int k : c.options.selection_k) labels.push_back(m + ":" + std::to_string(k));
    } else {
      labels.push_back(m);
    }
  }
  return labels;
}

ScenarioTemplate point_template(const ExperimentConfig& c, double value) {
  ScenarioTemplate t = c.scenario;
  auto as_size = [&](const char* what) {
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
      throw ConfigError(std::string("sweep values must be positive integers (") + what + ")");
    return static_cast<int>(value);
  };
  switch (c.kind) {
    case ExperimentKind::kVarVsN:
    case ExperimentKind::kVarVsNFixedD:
    case ExperimentKind::kPhaseError:
      t.n_sensors = as_size("N");
      break;
    case ExperimentKind::kVarVsM:
      t.n_antennas = as_size("M");
      break;
    case ExperimentKind::kSelectionSweep:
      if (!(value > 0.0)) throw ConfigError("selection-sweep values (sigma_n^2) must be > 0");
      t.fc_noise_var = value;
      break;
  }
  return t;
}

class Evaluator {
 public:
  Evaluator(const ExperimentConfig& c, const std::vector<std::string>& labels) : c_(c), labels_(labels) {}

  std::vector<Sample> run(const ScenarioTemplate& t, const SeedStream& rs) const {
    SensorScenario s;
    try {
      s = t.realize(rs);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    Rng rng = rs.child(StreamTag::kChannel).engine();
    const ChannelMatrix ch = generate_channel(s, rng);
    const QuadraticKernel b = quadratic_kernel(ch, s.sensor_noise_vars, s.fc_noise_var);
    std::vector<Sample> out(labels_.size());
    switch (c_.kind) {
      case ExperimentKind::kPhaseError:
        phase_error(s, b, rs, out);
        break;
      case ExperimentKind::kSelectionSweep:
        selection(s, ch, b, rs, out);
        break;
      default:
        variance(s, ch, b, rs, out);
    }
    return out;
  }

 private:
  Sample& slot(std::vector<Sample>& out, const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    return out[static_cast<std::size_t>(it - labels_.begin())];
  }

  SdpPhaseResult sdp(const QuadraticKernel& b, const SeedStream& rs) const {
    return optimize_phases_sdp(b, rs.child(StreamTag::kRounding), SdpOptions{c_.options.sdp_tolerance},
                               c_.options.sdp_rounds);
  }

  void variance(const SensorScenario& s, const ChannelMatrix& ch, const QuadraticKernel& b, const SeedStream& rs,
                std::vector<Sample>& out) const {
    const auto& ms = c_.methods;
    const Eigen::Index n = s.n_sensors;
    SdpPhaseResult sdp_result;
    const bool need_sdp = wants(ms, "sdp") || wants(ms, "gain-phase");
    double sdp_seconds = 0.0;
    if (need_sdp) {
      const auto t0 = std::chrono::steady_clock::now();
      sdp_result = sdp(b, rs);
      sdp_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    for (const auto& m : ms) {
      Sample& x = slot(out, m);
      if (m == "sdp") {
        x.seconds = sdp_seconds;
        x.value = estimate_variance(sdp_result.phases, b);
        x.gap = sdp_result.relaxation.relative_gap;
        x.flag = !sdp_result.relaxation.converged;
      } else if (m == "acma") {
        if (n <= static_cast<Eigen::Index>(c_.options.acma_m) * c_.options.acma_m) continue;
        timed(x, [&] {
          const AcmaResult r = acma_phases(b, c_.options.acma_m);
          x.value = estimate_variance(r.phases, b);
          x.flag = r.zero_entries > 0 || r.repeated_dominant;
        });
      } else if (m == "acma-best") {
        if (n <= 1) continue;
        timed(x, [&] {
          const AcmaResult r = acma_best_m(b, s.n_antennas, n);
          x.value = estimate_variance(r.phases, b);
          x.flag = r.zero_entries > 0 || r.repeated_dominant;
        });
      } else if (m == "gain-phase") {
        timed(x, [&] {
          const CVector start = sdp_result.phases.entries();
          const GainPhaseResult r =
              optimize_gain_phase(ch, s.sensor_noise_vars, s.fc_noise_var, rs.child(StreamTag::kRestart),
                                  std::span<const CVector>(&start, 1), GainPhaseOptions{c_.options.gain_phase_restarts});
          x.value = r.variance;
          x.flag = !r.converged;
        });
        x.seconds += sdp_seconds;
      } else if (m == "all-ones") {
        timed(x, [&] { x.value = estimate_variance(all_ones_phases(n), b); });
      } else if (m == "conjugate") {
        timed(x, [&] { x.value = estimate_variance(conjugate_phases(ch), b); });
      } else if (m == "lower-bound") {
        timed(x, [&] { x.value = variance_lower_bound(b, n); });
      } else if (m == "large-n-bound") {
        timed(x, [&] { x.value = large_n_lower_bound(s); });
      } else if (m == "single-antenna-bound") {
        timed(x, [&] { x.value = single_antenna_upper_bound(s); });
      } else if (m == "large-m") {
        timed(x, [&] { x.value = large_m_variance(s, s.n_antennas); });
      }
    }
  }

  void phase_error(const SensorScenario& s, const QuadraticKernel& b, const SeedStream& rs,
                   std::vector<Sample>& out) const {
    for (const auto& m : c_.methods) {
      PhaseVector a;
      double base_seconds = 0.0;
      {
        const auto t0 = std::chrono::steady_clock::now();
        if (m == "sdp") {
          a = sdp(b, rs).phases;
        } else if (m == "acma") {
          if (s.n_sensors <= c_.options.acma_m * c_.options.acma_m) continue;
          a = acma_phases(b, c_.options.acma_m).phases;
        } else {
          a = all_ones_phases(s.n_sensors);
        }
        base_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
      for (std::size_t k = 0; k < c_.options.phase_error_vars.size(); ++k) {
        const double var = c_.options.phase_error_vars[k];
        Sample& x = slot(out, m + ":" + fmt(var));
        x.seconds = base_seconds;
        timed(x, [&] {
          const PhaseErrorStats st = phase_error_ratio_mc(b, a, var, c_.options.phase_error_trials,
                                                          rs.child(StreamTag::kPhaseError, k));
          x.value = st.mean_ratio;
          x.flag = st.large_error_warning || st.skipped > 0;
        });
      }
    }
  }

  void selection(const SensorScenario& s, const ChannelMatrix& ch, const QuadraticKernel& b, const SeedStream& rs,
                 std::vector<Sample>& out) const {
    const auto t0 = std::chrono::steady_clock::now();
    const SdpPhaseResult full = sdp(b, rs);
    const double sdp_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const SelectionKernel f = selection_kernel(ch, full.phases);
    const SeedStream sub = rs.child(StreamTag::kSelection);
    const PhaseOptimizer reopt = [&](const QuadraticKernel& kb) {
      return optimize_phases_sdp(kb, sub, SdpOptions{c_.options.sdp_tolerance}, c_.options.sdp_rounds).phases;
    };
    auto variance_of = [&](const SelectionVector& x) {
      return 1.0 / reoptimized_objective(x, ch, s.sensor_noise_vars, s.fc_noise_var, reopt, &full.phases);
    };

    for (const auto& m : c_.methods) {
      if (m == "all-sensors") {
        Sample& x = slot(out, m);
        x.seconds = sdp_seconds;
        x.value = estimate_variance(full.phases, b);
        x.gap = full.relaxation.relative_gap;
        x.flag = !full.relaxation.converged;
        continue;
      }
      for (int k : c_.options.selection_k) {
        Sample& x = slot(out, m + ":" + std::to_string(k));
        if (k > s.n_sensors) continue;
        timed(x, [&] {
          if (m == "lp") {
            const LpSelectionResult r = select_lp(f, k);
            x.gap = std::abs(r.dual_objective - r.lp_objective) / (1.0 + std::abs(r.lp_objective));
            x.value = variance_of(r.selection);
          } else if (m == "greedy") {
            x.value = variance_of(select_greedy(f, k));
          } else if (m == "min-noise") {
            x.value = variance_of(select_min_noise(s.sensor_noise_vars, k));
          } else if (m == "exhaustive") {
            x.value = 1.0 / select_exhaustive(ch, s.sensor_noise_vars, s.fc_noise_var, k, reopt).objective;
          }
        });
      }
    }
  }

  const ExperimentConfig& c_;
  const std::vector<std::string>& labels_;
};

ResultRecord aggregate(double sweep_value, const std::string& label, const std::vector<std::vector<Sample>>& rows,
                       std::size_t col) {
  ResultRecord r;
  r.sweep_value = sweep_value;
  r.method = label;
  double mean = 0.0;
  double m2 = 0.0;
  double gap_sum = 0.0;
  double gap_max = 0.0;
  int gaps = 0;
  int flagged = 0;
  for (const auto& row : rows) {
    const Sample& x = row[col];
    r.wall_time += x.seconds;
    if (x.flag) ++flagged;
    if (std::isfinite(x.gap)) {
      gap_sum += x.gap;
      gap_max = std::max(gap_max, x.gap);
      ++gaps;
    }
    if (!std::isfinite(x.value)) {
      ++r.skipped;
      continue;
    }
    ++r.count;
    const double d = x.value - mean;
    mean += d / r.count;
    m2 += d * (x.value - mean);
  }
  r.mean_variance = r.count > 0 ? mean : kNaN;
  r.std_error = r.count > 1 ? std::sqrt(m2 / (r.count - 1) / r.count) : 0.0;
  r.certificate["flagged"] = flagged;
  if (gaps > 0) {
    r.certificate["mean_gap"] = gap_sum / gaps;
    r.certificate["max_gap"] = gap_max;
  }
  return r;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  throw ConfigError("unknown experiment kind: " + name);
}

std::vector<std::string> available_methods(ExperimentKind kind) {
  if (is_variance_kind(kind))
    return {"lower-bound", "sdp",           "acma",  "acma-best", "gain-phase", "all-ones", "conjugate",
            "large-n-bound", "single-antenna-bound", "large-m"};
  if (kind == ExperimentKind::kPhaseError) return {"sdp", "acma", "all-ones"};
  return {"lp", "greedy", "min-noise", "exhaustive", "all-sensors"};
}

std::vector<std::string> default_methods(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kVarVsN:
    case ExperimentKind::kVarVsNFixedD:
      return {"lower-bound", "gain-phase", "sdp", "acma", "all-ones", "large-n-bound", "single-antenna-bound"};
    case ExperimentKind::kVarVsM:
      return {"lower-bound", "gain-phase", "sdp", "acma", "all-ones", "large-m"};
    case ExperimentKind::kPhaseError:
      return {"sdp"};
    case ExperimentKind::kSelectionSweep:
      return {"lp", "greedy", "min-noise", "all-sensors"};
  }
  return {};
}

ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  if (!j.contains("kind")) throw ConfigError("missing field: kind");
  ExperimentConfig c;
  c.kind = parse_kind(get_or<std::string>(j, "kind", ""));
  c.scenario = scenario_template_from_json(j);
  c.seed = get_or<std::uint64_t>(j, "seed", 0);
  c.realizations = get_or<int>(j, "realizations", 300);
  if (c.realizations < 1) throw ConfigError("realizations must be >= 1");
  c.sweep = get_or<std::vector<double>>(j, "sweep", {});
  if (c.sweep.empty()) {
    switch (c.kind) {
      case ExperimentKind::kVarVsM: c.sweep = {static_cast<double>(c.scenario.n_antennas)}; break;
      case ExperimentKind::kSelectionSweep: c.sweep = {c.scenario.fc_noise_var}; break;
      default: c.sweep = {static_cast<double>(c.scenario.n_sensors)};
    }
  }
  c.methods = get_or<std::vector<std::string>>(j, "methods", {});
  if (c.methods.empty()) c.methods = default_methods(c.kind);
  const auto allowed = available_methods(c.kind);
  for (const auto& m : c.methods) {
    if (!wants(allowed, m)) throw ConfigError("unknown method '" + m + "' for kind " + to_string(c.kind));
    if (std::count(c.methods.begin(), c.methods.end(), m) > 1) throw ConfigError("duplicate method: " + m);
  }

  const json opts = j.value("options", json::object());
  if (!opts.is_object()) throw ConfigError("options: expected a JSON object");
  ExperimentOptions& o = c.options;
  o.sdp_rounds = get_or(opts, "sdp_rounds", o.sdp_rounds);
  o.sdp_tolerance = get_or(opts, "sdp_tolerance", o.sdp_tolerance);
  o.acma_m = get_or(opts, "acma_m", o.acma_m);
  o.gain_phase_restarts = get_or(opts, "gain_phase_restarts", o.gain_phase_restarts);
  o.phase_error_trials = get_or(opts, "phase_error_trials", o.phase_error_trials);
  o.phase_error_vars = get_or(opts, "phase_error_vars", o.phase_error_vars);
  o.selection_k = get_or(opts, "selection_k", o.selection_k);
  if (o.sdp_rounds < 1 || !(o.sdp_tolerance > 0.0) || o.acma_m < 1 || o.gain_phase_restarts < 1 ||
      o.phase_error_trials < 1)
    throw ConfigError("options: counts must be >= 1 and sdp_tolerance > 0");
  for (double v : o.phase_error_vars)
    if (!(v >= 0.0)) throw ConfigError("options.phase_error_vars must be >= 0");
  for (int k : o.selection_k)
    if (k < 1) throw ConfigError("options.selection_k must be >= 1");

  if (c.kind == ExperimentKind::kVarVsNFixedD && c.scenario.distances.kind() != Distribution::Kind::kConstant)
    throw ConfigError("var-vs-N-fixed-d requires a constant distance");
  if (c.scenario.channel && !(c.sweep.size() == 1 && c.kind != ExperimentKind::kSelectionSweep))
    throw ConfigError("an explicit channel cannot be combined with a size sweep");
  for (double v : c.sweep) point_template(c, v);
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return experiment_config_from_json(j);
}

json to_json(const ExperimentConfig& c) {
  json j = to_json(c.scenario);
  j["kind"] = to_string(c.kind);
  j["seed"] = c.seed;
  j["sweep"] = c.sweep;
  j["realizations"] = c.realizations;
  j["methods"] = c.methods;
  j["options"] = json{{"sdp_rounds", c.options.sdp_rounds},
                      {"sdp_tolerance", c.options.sdp_tolerance},
                      {"acma_m", c.options.acma_m},
                      {"gain_phase_restarts", c.options.gain_phase_restarts},
                      {"phase_error_trials", c.options.phase_error_trials},
                      {"phase_error_vars", c.options.phase_error_vars},
                      {"selection_k", c.options.selection_k}};
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config, RunOptions options) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> labels = record_labels(config);
  const Evaluator evaluator(config, labels);
  const SeedStream master(config.seed);
  const int jobs = std::max(1, std::min(options.jobs, config.realizations));

  if (config.kind == ExperimentKind::kSelectionSweep && wants(config.methods, "exhaustive")) {
    for (int k : config.options.selection_k) {
      double combos = 1.0;
      for (int i = 0; i < k; ++i) combos = combos * (config.scenario.n_sensors - i) / (i + 1);
      if (combos > kExhaustiveBudget) throw ConfigError("exhaustive selection: C(N, K) exceeds the budget");
    }
  }

  ExperimentResult result;
  for (std::size_t p = 0; p < config.sweep.size(); ++p) {
    const ScenarioTemplate t = point_template(config, config.sweep[p]);
    const SeedStream ps = master.child(StreamTag::kSweepPoint, p);
    std::vector<std::vector<Sample>> rows(static_cast<std::size_t>(config.realizations));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      while (true) {
        const int r = next.fetch_add(1);
        if (r >= config.realizations) return;
        try {
          rows[static_cast<std::size_t>(r)] = evaluator.run(t, ps.child(StreamTag::kRealization, r));
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = config.realizations;
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t col = 0; col < labels.size(); ++col) {
      ResultRecord r = aggregate(config.sweep[p], labels[col], rows, col);
      if (config.kind == ExperimentKind::kPhaseError) {
        const double var = std::stod(labels[col].substr(labels[col].rfind(':') + 1));
        r.bound = phase_error_bound(t.n_sensors, var);
      }
      result.records.push_back(std::move(r));
    }
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace psf
