#include "psf/baselines.hpp"

#include <cmath>
#include <limits>

#include "psf/linalg.hpp"

namespace psf {

PhaseVector all_ones_phases(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("all_ones_phases: N must be >= 1");
  return PhaseVector::ones(n);
}

PhaseVector conjugate_phases(const ChannelMatrix& channel) {
  if (channel.n_antennas() < 1) throw std::invalid_argument("conjugate_phases: M must be >= 1");
  return PhaseVector::from_complex(channel.h.row(0).conjugate().transpose());
}

namespace {

struct Evaluation {
  double value;
  CVector z;  // Hᴴ C⁻¹ H a
};

Evaluation evaluate(const CVector& a, const ChannelMatrix& channel, const RVector& v, double fc_noise_var,
                    bool want_z) {
  const CMatrix& h = channel.h;
  const RVector w = a.cwiseAbs2().cwiseProduct(v);
  CMatrix c = h * w.asDiagonal() * h.adjoint();
  c.diagonal().array() += fc_noise_var;
  const Eigen::LLT<CMatrix> llt(linalg::hermitize(c));
  const CVector g = h * a;
  const CVector cg = llt.solve(g);
  Evaluation e{g.dot(cg).real(), {}};
  if (want_z) e.z = h.adjoint() * cg;
  return e;
}

void check(const ChannelMatrix& channel, const RVector& v, double fc_noise_var) {
  if (!(fc_noise_var > 0.0)) throw std::invalid_argument("gain-phase: fc_noise_var must be > 0");
  if (v.size() != channel.n_sensors()) throw std::invalid_argument("gain-phase: noise length != N");
}

CVector project_ball(CVector a, double radius_sq) {
  const double norm_sq = a.squaredNorm();
  if (norm_sq > radius_sq) a *= std::sqrt(radius_sq / norm_sq);
  return a;
}

}  // namespace

double gain_phase_objective(const CVector& a, const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                            double fc_noise_var) {
  check(channel, sensor_noise_vars, fc_noise_var);
  return evaluate(a, channel, sensor_noise_vars, fc_noise_var, false).value;
}

CVector gain_phase_gradient(const CVector& a, const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                            double fc_noise_var) {
  check(channel, sensor_noise_vars, fc_noise_var);
  const Evaluation e = evaluate(a, channel, sensor_noise_vars, fc_noise_var, true);
  // 2 df/d conj(a_i) = 2 (z_i - v_i a_i |z_i|^2)
  CVector g(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    g[i] = 2.0 * (e.z[i] - sensor_noise_vars[i] * std::norm(e.z[i]) * a[i]);
  return g;
}

GainPhaseResult optimize_gain_phase(const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                                    double fc_noise_var, const SeedStream& stream,
                                    std::span<const CVector> initial_points, GainPhaseOptions options) {
  check(channel, sensor_noise_vars, fc_noise_var);
  if (options.n_restarts < 1) throw std::invalid_argument("optimize_gain_phase: n_restarts must be >= 1");
  const Eigen::Index n = channel.n_sensors();
  const double radius_sq = static_cast<double>(n);

  std::vector<CVector> starts;
  starts.push_back(CVector::Ones(n));
  for (const CVector& p : initial_points) {
    if (p.size() != n) throw std::invalid_argument("optimize_gain_phase: initial point length != N");
    starts.push_back(project_ball(p, radius_sq));
  }
  for (int k = 0; k < options.n_restarts; ++k) {
    Rng rng = stream.child(static_cast<std::uint64_t>(k)).engine();
    CVector a(n);
    for (Eigen::Index i = 0; i < n; ++i) a[i] = std::polar(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, kTwoPi));
    if (a.squaredNorm() > 0.0) a *= std::sqrt(radius_sq / a.squaredNorm());
    starts.push_back(std::move(a));
  }

  GainPhaseResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (const CVector& start : starts) {
    CVector a = start;
    Evaluation cur = evaluate(a, channel, sensor_noise_vars, fc_noise_var, true);
    double step = -1.0;
    bool converged = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      CVector grad(n);
      for (Eigen::Index i = 0; i < n; ++i)
        grad[i] = 2.0 * (cur.z[i] - sensor_noise_vars[i] * std::norm(cur.z[i]) * a[i]);
      const double gnorm = grad.norm();
      if (!(gnorm > 0.0)) {
        converged = true;
        break;
      }
      if (step < 0.0) step = 0.1 * std::sqrt(radius_sq) / gnorm;

      CVector next;
      Evaluation trial{};
      bool accepted = false;
      while (step * gnorm > 1e-14 * std::sqrt(radius_sq)) {
        next = project_ball(a + step * grad, radius_sq);
        trial = evaluate(next, channel, sensor_noise_vars, fc_noise_var, true);
        const double predicted = grad.dot(next - a).real();
        if (trial.value >= cur.value + 1e-4 * predicted) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted || trial.value < cur.value) {
        converged = true;
        break;
      }
      const double gain = trial.value - cur.value;
      a = std::move(next);
      cur = std::move(trial);
      step *= 2.0;
      if (gain <= options.tolerance * std::abs(cur.value)) {
        converged = true;
        break;
      }
    }
    ++best.starts;
    if (cur.value > best.objective) {
      best.objective = cur.value;
      best.weights = a;
      best.converged = converged;
    }
  }
  best.variance = best.objective > 0.0 ? 1.0 / best.objective : std::numeric_limits<double>::infinity();
  return best;
}

BruteForceResult brute_force_phases(const QuadraticKernel& b, int levels) {
  const Eigen::Index n = b.size();
  if (n < 1) throw std::invalid_argument("brute_force_phases: empty kernel");
  if (n > kBruteForceMaxSensors)
    throw std::invalid_argument("brute_force_phases: N > " + std::to_string(kBruteForceMaxSensors) +
                                " is too expensive");
  if (levels < 1) throw std::invalid_argument("brute_force_phases: levels must be >= 1");

  std::vector<Complex> table(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) table[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / levels);

  const CMatrix& m = b.matrix();
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  CVector a = CVector::Ones(n);
  CVector best_a = a;
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    const double value = linalg::quad_form(a, m);
    if (value > best) {
      best = value;
      best_a = a;
    }
    // Odometer over sensors 1..N-1; sensor 0 stays at phase 0.
    Eigen::Index pos = 1;
    while (pos < n) {
      auto& d = digits[static_cast<std::size_t>(pos)];
      if (++d < levels) {
        a[pos] = table[static_cast<std::size_t>(d)];
        break;
      }
      d = 0;
      a[pos] = table[0];
      ++pos;
    }
    if (pos >= n) break;
  }
  return BruteForceResult{PhaseVector::from_complex(best_a), best};
}

}  // namespace psf
