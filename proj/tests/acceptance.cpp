// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "psf/asymptotics.hpp"
#include "psf/harness.hpp"
#include "psf/phase_acma.hpp"
#include "psf/phase_sdp.hpp"
#include "psf/selection.hpp"

using namespace psf;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  template <typename... Args>
  void note(const char* fmt, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, static_cast<double>(args)...);
    detail += (detail.empty() ? "" : "; ") + std::string(buf);
  }
};

json scenario(int n, int m, json distances, double v_lo, double v_hi, double fc) {
  return json{{"n_sensors", n},
              {"n_antennas", m},
              {"distances", std::move(distances)},
              {"path_loss_exp", 1.0},
              {"sensor_noise_vars", {{"dist", "uniform"}, {"lo", v_lo}, {"hi", v_hi}}},
              {"fc_noise_var", fc}};
}

json uniform_d() { return json{{"dist", "uniform"}, {"lo", 3.0}, {"hi", 20.0}}; }

// (sweep value, method) -> mean
std::map<std::pair<double, std::string>, double> run(json cfg) {
  const ExperimentResult r = run_experiment(experiment_config_from_json(cfg), RunOptions{jobs()});
  std::map<std::pair<double, std::string>, double> out;
  for (const auto& rec : r.records) out[{rec.sweep_value, rec.method}] = rec.mean_variance;
  return out;
}

bool close_rel(double x, double y, double tol) { return std::abs(x - y) <= tol * std::abs(y); }

Verdict two_sensor() {
  Verdict v;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const CMatrix m = oracle::random_psd(rng, 2, 1 + t % 2);
    const QuadraticKernel b(m);
    const double closed = m(0, 0).real() + m(1, 1).real() + 2 * std::abs(m(0, 1));
    const SdpSolution relax = solve_diag_sdp(b);
    const PhaseVector ext = extract_rank_one(relax, b, SeedStream(static_cast<std::uint64_t>(t)));
    const double extracted = oracle::quad(ext.entries(), m);
    const double acma = acma_phases(b, 1).objective;
    for (double x : {relax.objective, extracted, acma}) worst = std::max(worst, std::abs(x - closed) / closed);
  }
  v.note("max relative error %.2e", worst);
  v.require(worst <= 1e-6, "closed form within 1e-6");
  return v;
}

Verdict sandwich() {
  Verdict v;
  constexpr int kLevels = 64;
  int bad_grid = 0, bad_order = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto inst = fixture::make(4, 2, seed);
    const CMatrix& m = inst.kernel.matrix();
    const SdpPhaseResult r = optimize_phases_sdp(inst.kernel, SeedStream(seed).child(StreamTag::kRounding));
    const double grid = oracle::grid_max(m, kLevels);
    const double slack = std::pow(oracle::kPi / kLevels, 2) * m.trace().real();
    const double lmax = Eigen::SelfAdjointEigenSolver<CMatrix>(m).eigenvalues().maxCoeff();
    if (grid > r.objective + slack) ++bad_grid;
    // The relaxation optimum lies in [primal, dual] of the returned certificate.
    if (r.objective > r.relaxation.dual_objective || r.relaxation.objective > 4 * lmax * (1 + 1e-12)) ++bad_order;
  }
  v.note("grid violations %g, ordering violations %g", bad_grid, bad_order);
  v.require(bad_grid == 0, "grid <= extracted + slack");
  v.require(bad_order == 0, "extracted <= relaxation <= N lambda_max");
  return v;
}

Verdict bound_ratio_numbers() {
  Verdict v;
  ScenarioTemplate t;
  t.n_sensors = 50;
  t.n_antennas = 4;
  t.distances = Distribution::uniform(3.0, 20.0);
  t.sensor_noise_vars = Distribution::uniform(0.01, 0.1);
  t.fc_noise_var = 0.1;
  double mr = 0.0, br = 0.0;
  const SeedStream master(3);
  for (int k = 0; k < 300; ++k) {
    const SensorScenario s = t.realize(master.child(static_cast<std::uint64_t>(k)));
    mr += moment_ratio(s) / 300;
    br += bound_ratio(s) / 300;
  }
  v.note("moment ratio %.4f (target 0.304), bound ratio %.4f (target 0.702)", mr, br);
  v.require(std::abs(mr - 0.304) <= 0.05, "moment ratio within 0.05");
  v.require(std::abs(br - 0.702) <= 0.05, "bound ratio within 0.05");
  return v;
}

Verdict fig1() {
  Verdict v;
  json cfg = scenario(5, 4, uniform_d(), 0.01, 0.1, 0.1);
  cfg["kind"] = "var-vs-N";
  cfg["sweep"] = {5, 10, 20, 40};
  cfg["realizations"] = 100;
  cfg["seed"] = 1;
  cfg["methods"] = {"lower-bound", "gain-phase", "sdp", "acma", "all-ones", "large-n-bound", "single-antenna-bound"};
  auto r = run(cfg);
  for (double n : {5.0, 10.0, 20.0, 40.0}) {
    const double lb = r[{n, "lower-bound"}], gp = r[{n, "gain-phase"}], sdp = r[{n, "sdp"}],
                 acma = r[{n, "acma"}], ones = r[{n, "all-ones"}];
    v.note("N=%g lb %.4g gp %.4g sdp %.4g acma %.4g ones %.4g", n, lb, gp, sdp, acma, ones);
    const std::string at = " at N=" + std::to_string(static_cast<int>(n));
    v.require(lb <= gp, "lower bound <= gain-phase" + at);
    v.require(gp <= sdp, "gain-phase <= sdp" + at);
    v.require(sdp <= 1.25 * acma, "sdp <= 1.25 acma" + at);
    v.require(acma <= ones, "acma <= all-ones" + at);
  }
  const double lo = r[{40.0, "large-n-bound"}], hi = r[{40.0, "single-antenna-bound"}], sdp = r[{40.0, "sdp"}];
  v.note("N=40 large-N bound %.4g <= sdp %.4g <= single-antenna %.4g", lo, sdp, hi);
  v.require(lo <= sdp && sdp <= hi, "N=40 sdp between the asymptotic bounds");
  return v;
}

Verdict fig2() {
  Verdict v;
  json cfg = scenario(50, 4, 11.5, 0.01, 0.1, 0.1);
  cfg["kind"] = "var-vs-N-fixed-d";
  cfg["realizations"] = 100;
  cfg["seed"] = 2;
  cfg["methods"] = {"sdp", "large-n-bound", "single-antenna-bound"};
  auto r = run(cfg);
  const double sdp = r[{50.0, "sdp"}], lo = r[{50.0, "large-n-bound"}], hi = r[{50.0, "single-antenna-bound"}];
  v.note("sdp %.5g, asymptotic %.5g / %.5g", sdp, lo, hi);
  v.require(close_rel(lo, hi, 1e-12), "bounds coincide");
  v.require(close_rel(sdp, lo, 0.10), "sdp within 10%");
  return v;
}

Verdict large_m() {
  Verdict v;
  json cfg = scenario(4, 512, uniform_d(), 0.001, 0.01, 0.1);
  cfg["kind"] = "var-vs-M";
  cfg["sweep"] = {512};
  cfg["realizations"] = 50;
  cfg["seed"] = 3;
  cfg["methods"] = {"all-ones", "sdp", "large-m"};
  auto r = run(cfg);
  const double ones = r[{512.0, "all-ones"}], sdp = r[{512.0, "sdp"}], lim = r[{512.0, "large-m"}];
  v.note("all-ones %.5g, sdp %.5g, limit %.5g", ones, sdp, lim);
  v.require(close_rel(ones, lim, 0.10), "all-ones within 10% of the limit");
  v.require(close_rel(sdp, lim, 0.10), "sdp within 10% of the limit");
  v.require(close_rel(ones, sdp, 0.10), "all-ones within 10% of sdp");
  return v;
}

Verdict phase_error() {
  Verdict v;
  json cfg = scenario(10, 4, uniform_d(), 0.01, 0.1, 0.1);
  cfg["kind"] = "phase-error";
  cfg["sweep"] = {10, 30};
  cfg["realizations"] = 100;
  cfg["seed"] = 4;
  cfg["methods"] = {"sdp"};
  cfg["options"] = {{"phase_error_trials", 1000}, {"phase_error_vars", {0.1, 0.2}}};
  auto r = run(cfg);
  for (double var : {0.1, 0.2}) {
    char label[32];
    std::snprintf(label, sizeof label, "sdp:%g", var);
    const double r10 = r[{10.0, label}], r30 = r[{30.0, label}];
    v.note("var %g: ratio N=10 %.4f, N=30 %.4f", var, r10, r30);
    v.require(r10 <= 1 + (1 - 1.0 / 10) * var + 0.02, std::string("bound at N=10, ") + label);
    v.require(r30 <= 1 + (1 - 1.0 / 30) * var + 0.02, std::string("bound at N=30, ") + label);
    v.require(r30 > r10, std::string("degradation grows with N, ") + label);
  }
  return v;
}

Verdict selection_oracle() {
  Verdict v;
  const PhaseOptimizer opt = [](const QuadraticKernel& b) {
    return optimize_phases_sdp(b, SeedStream(17)).phases;
  };
  double lp_ratio = 0.0, greedy_ratio = 0.0, worst_noise = 0.0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = fixture::make(10, 4, seed, 1.0, 0.001, 0.01);
    const auto& nv = inst.scenario.sensor_noise_vars;
    const double fc = inst.scenario.fc_noise_var;
    const ExhaustiveResult best = select_exhaustive(inst.channel, nv, fc, 3, opt);
    const PhaseVector a = opt(inst.kernel);
    const SelectionKernel f = selection_kernel(inst.channel, a);
    lp_ratio += reoptimized_objective(select_lp(f, 3).selection, inst.channel, nv, fc, opt) / best.objective / 30;
    greedy_ratio += reoptimized_objective(select_greedy(f, 3), inst.channel, nv, fc, opt) / best.objective / 30;

    constexpr double kQuietFc = 1e-7;
    const SelectionVector quiet = select_min_noise(nv, 3);
    const double var = 1.0 / reoptimized_objective(quiet, inst.channel, nv, kQuietFc, opt);
    double info = 0.0;
    for (Eigen::Index i : quiet.indices()) info += 1.0 / nv[i];
    worst_noise = std::max(worst_noise, std::abs(var * info - 1.0));
  }
  v.note("mean LP/oracle %.4f, greedy/oracle %.4f, min-noise worst deviation %.4f", lp_ratio, greedy_ratio,
         worst_noise);
  v.require(lp_ratio >= 0.95, "LP >= 95% of oracle");
  v.require(greedy_ratio >= 0.95, "greedy >= 95% of oracle");
  v.require(worst_noise <= 0.15, "min-noise within 15% of the noise-limited variance");
  return v;
}

Verdict fig5() {
  Verdict v;
  json cfg = scenario(35, 4, uniform_d(), 0.001, 0.01, 0.1);
  cfg["kind"] = "selection-sweep";
  std::vector<double> sweep;
  for (int k = 0; k < 5; ++k) sweep.push_back(std::pow(10.0, -7.0 + 7.0 * k / 4));
  cfg["sweep"] = sweep;
  cfg["realizations"] = 100;
  cfg["seed"] = 5;
  cfg["methods"] = {"lp", "greedy", "min-noise"};
  cfg["options"] = {{"selection_k", {10}}};
  auto r = run(cfg);
  for (double s : sweep) {
    const double lp = r[{s, "lp:10"}], gr = r[{s, "greedy:10"}], mn = r[{s, "min-noise:10"}];
    v.note("s2=%.0e lp %.4g greedy %.4g min-noise %.4g", s, lp, gr, mn);
    v.require(close_rel(gr, lp, 0.02), "greedy within 2% of LP");
  }
  const double lo = sweep.front(), hi = sweep.back();
  v.require(r[{lo, "min-noise:10"}] < std::min(r[{lo, "lp:10"}], r[{lo, "greedy:10"}]), "min-noise best at low s2");
  v.require(std::min(r[{hi, "lp:10"}], r[{hi, "greedy:10"}]) < r[{hi, "min-noise:10"}], "LP/greedy best at high s2");
  return v;
}

double min_time(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int k = 0; k < repeats; ++k) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Verdict complexity() {
  Verdict v;
  std::vector<double> ns, t_acma, t_sdp;
  for (int n : {50, 100, 200, 400}) {
    const auto inst = fixture::make(n, 4, static_cast<std::uint64_t>(n));
    double sink = 0.0;
    ns.push_back(n);
    t_acma.push_back(min_time([&] { sink += acma_phases(inst.kernel, 2).objective; }, n <= 100 ? 20 : 5));
    t_sdp.push_back(min_time([&] { sink += optimize_phases_sdp(inst.kernel, SeedStream(1)).objective; },
                             n <= 100 ? 5 : 2));
    if (!(sink > 0)) v.require(false, "non-positive objective");
  }
  const double ea = slope(ns, t_acma), es = slope(ns, t_sdp);
  v.note("ACMA exponent %.2f, SDP exponent %.2f (N=400: %.3g s)", ea, es, t_sdp.back());
  v.require(ea >= 1.6 && ea <= 2.6, "ACMA exponent in [1.6, 2.6]");
  v.require(es >= ea + 0.8, "SDP exponent >= ACMA exponent + 0.8");
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 means not asserted
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "two-sensor closed form", 10, two_sensor},
      {2, "sandwich property", 120, sandwich},
      {3, "bound-ratio numbers", 5, bound_ratio_numbers},
      {4, "variance vs N ordering", 600, fig1},
      {5, "equal-distance convergence", 300, fig2},
      {6, "large-M independence", 300, large_m},
      {7, "phase-error bound", 600, phase_error},
      {8, "selection oracle agreement", 300, selection_oracle},
      {9, "selection crossover", 900, fig5},
      {10, "complexity scaling", 0, complexity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    if (c.limit > 0) v.require(elapsed < c.limit, "runtime limit");
    if (!v.pass) ++failures;
    std::printf("criterion %d %s: %s [%.1f s] %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name, elapsed,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
