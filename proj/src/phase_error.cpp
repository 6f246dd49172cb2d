#include "psf/phase_error.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "psf/linalg.hpp"

namespace psf {

PhaseVector perturb_phases(const PhaseVector& a, double sigma_p_sq, Rng& rng) {
  if (!(sigma_p_sq >= 0.0)) throw std::invalid_argument("perturb_phases: sigma_p^2 must be >= 0");
  if (sigma_p_sq == 0.0) return a;
  std::normal_distribution<double> delta(0.0, std::sqrt(sigma_p_sq));
  CVector out = a.entries();
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= std::polar(1.0, delta(rng));
  return PhaseVector::from_complex(out);
}

PhaseErrorStats phase_error_ratio_mc(const QuadraticKernel& b, const PhaseVector& a, double sigma_p_sq,
                                     int n_trials, const SeedStream& stream) {
  if (n_trials < 1) throw std::invalid_argument("phase_error_ratio_mc: n_trials must be >= 1");
  if (a.size() != b.size()) throw std::invalid_argument("phase_error_ratio_mc: size mismatch");
  PhaseErrorStats out;
  out.large_error_warning = sigma_p_sq > kPhaseErrorWarnThreshold;
  // Var(a') / Var(a) = a^H B a / a'^H B a'
  const double base = linalg::quad_form(a.entries(), b.matrix());
  const double floor = kDegenerateFraction * b.trace();
  if (!(base > floor)) throw UnestimableError("phase_error_ratio_mc: unperturbed vector is degenerate");

  double mean = 0.0;
  double m2 = 0.0;
  for (int t = 0; t < n_trials; ++t) {
    Rng rng = stream.child(static_cast<std::uint64_t>(t)).engine();
    const PhaseVector p = perturb_phases(a, sigma_p_sq, rng);
    const double q = linalg::quad_form(p.entries(), b.matrix());
    if (!(q > floor)) {
      ++out.skipped;
      continue;
    }
    const double r = base / q;
    ++out.trials;
    const double delta = r - mean;
    mean += delta / out.trials;
    m2 += delta * (r - mean);
  }
  if (out.trials > 0) out.mean_ratio = mean;
  if (out.trials > 1) out.std_error = std::sqrt(m2 / (out.trials - 1) / out.trials);
  return out;
}

double phase_error_bound(Eigen::Index n, double sigma_p_sq) {
  if (n < 1) throw std::invalid_argument("phase_error_bound: N must be >= 1");
  if (!(sigma_p_sq >= 0.0)) throw std::invalid_argument("phase_error_bound: sigma_p^2 must be >= 0");
  return 1.0 + (1.0 - 1.0 / static_cast<double>(n)) * sigma_p_sq;
}

}  // namespace psf
