#include "psf/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "psf/linalg.hpp"

namespace psf {

SelectionVector::SelectionVector(std::vector<bool> mask) : mask_(std::move(mask)) {}

SelectionVector SelectionVector::from_indices(Eigen::Index n, const std::vector<Eigen::Index>& indices) {
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  for (Eigen::Index i : indices) {
    if (i < 0 || i >= n) throw std::out_of_range("SelectionVector: index out of range");
    mask[static_cast<std::size_t>(i)] = true;
  }
  return SelectionVector(std::move(mask));
}

Eigen::Index SelectionVector::count() const {
  return static_cast<Eigen::Index>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<Eigen::Index> SelectionVector::indices() const {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

SelectionKernel selection_kernel(const ChannelMatrix& channel, const PhaseVector& a) {
  if (a.size() != channel.n_sensors()) throw std::invalid_argument("selection_kernel: phase length != N");
  const CMatrix hd = channel.h * a.entries().asDiagonal();
  return SelectionKernel{linalg::hermitize(hd.adjoint() * hd)};
}

ChannelMatrix restrict_channel(const ChannelMatrix& channel, const SelectionVector& x) {
  if (x.size() != channel.n_sensors()) throw std::invalid_argument("restrict_channel: mask length != N");
  const auto idx = x.indices();
  CMatrix h(channel.n_antennas(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) h.col(static_cast<Eigen::Index>(k)) = channel.h.col(idx[k]);
  return ChannelMatrix{std::move(h)};
}

RVector restrict_vector(const RVector& v, const SelectionVector& x) {
  if (x.size() != v.size()) throw std::invalid_argument("restrict_vector: mask length mismatch");
  const auto idx = x.indices();
  RVector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out[static_cast<Eigen::Index>(k)] = v[idx[k]];
  return out;
}

namespace {

void check_k(Eigen::Index n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("selection: K must satisfy 1 <= K <= N");
}

double subset_objective(const SelectionVector& x, const PhaseVector& a_sub, const ChannelMatrix& channel,
                        const RVector& v, double fc_noise_var) {
  const QuadraticKernel b = quadratic_kernel(restrict_channel(channel, x), restrict_vector(v, x), fc_noise_var);
  return linalg::quad_form(a_sub.entries(), b.matrix());
}

}  // namespace

double selection_objective(const SelectionVector& x, const PhaseVector& a, const ChannelMatrix& channel,
                           const RVector& sensor_noise_vars, double fc_noise_var) {
  if (x.count() < 1) throw std::invalid_argument("selection_objective: empty selection");
  if (a.size() != x.size()) throw std::invalid_argument("selection_objective: phase length != N");
  return subset_objective(x, a.restricted(x.indices()), channel, sensor_noise_vars, fc_noise_var);
}

LinearProgram selection_lp(const SelectionKernel& f, int k, bool prune_redundant) {
  const Eigen::Index n = f.size();
  check_k(n, k);
  const Eigen::Index pairs = n * (n - 1) / 2;
  const Eigen::Index nv = n + pairs;

  // Row layout per pair: which of (y <= x_i, y <= x_j, x_i + x_j - y <= 1) are kept.
  std::vector<std::pair<bool, bool>> keep(static_cast<std::size_t>(pairs));
  Eigen::Index rows = 1;
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j, ++p) {
      const double w = f.matrix(i, j).real();
      const bool upper = !prune_redundant || !(w < 0.0);
      const bool lower = !prune_redundant || !(w > 0.0);
      keep[static_cast<std::size_t>(p)] = {upper, lower};
      rows += (upper ? 2 : 0) + (lower ? 1 : 0);
    }

  LinearProgram lp;
  lp.objective.resize(nv);
  lp.upper.resize(nv);
  lp.constraints = RMatrix::Zero(rows, nv);
  lp.rhs = RVector::Zero(rows);
  lp.senses.assign(static_cast<std::size_t>(rows), RowSense::kLessEqual);
  for (Eigen::Index i = 0; i < n; ++i) {
    lp.objective[i] = f.matrix(i, i).real();
    lp.upper[i] = 1.0;
    lp.constraints(0, i) = 1.0;
  }
  lp.rhs[0] = k;
  lp.senses[0] = RowSense::kEqual;

  Eigen::Index r = 1;
  p = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j, ++p) {
      const Eigen::Index y = n + p;
      lp.objective[y] = 2.0 * f.matrix(i, j).real();
      lp.upper[y] = std::numeric_limits<double>::infinity();
      const auto [upper, lower] = keep[static_cast<std::size_t>(p)];
      if (upper) {
        lp.constraints(r, y) = 1.0;
        lp.constraints(r++, i) = -1.0;
        lp.constraints(r, y) = 1.0;
        lp.constraints(r++, j) = -1.0;
      }
      if (lower) {
        lp.constraints(r, i) = 1.0;
        lp.constraints(r, j) = 1.0;
        lp.constraints(r, y) = -1.0;
        lp.rhs[r++] = 1.0;
      }
    }
  return lp;
}

LpSelectionResult select_lp(const SelectionKernel& f, int k, LpSelectionOptions options) {
  const Eigen::Index n = f.size();
  check_k(n, k);
  const LinearProgram lp = selection_lp(f, k, options.prune_redundant);
  const LpResult sol = solve_lp(lp, options.lp);
  if (sol.status != LpStatus::kOptimal)
    throw std::runtime_error("select_lp: LP solver returned " + to_string(sol.status));

  LpSelectionResult out;
  out.relaxed = sol.x.head(n);
  out.lp_objective = sol.objective;
  out.dual_objective = sol.dual_objective;
  out.status = sol.status;
  out.iterations = sol.iterations;

  constexpr double kTie = 1e-7;
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  RVector gain = f.matrix.diagonal().real();
  for (int step = 0; step < k; ++step) {
    double top = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      if (!chosen[static_cast<std::size_t>(i)]) top = std::max(top, out.relaxed[i]);
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (chosen[static_cast<std::size_t>(i)] || out.relaxed[i] < top - kTie) continue;
      if (pick < 0 || gain[i] > gain[pick] ||
          (gain[i] == gain[pick] && f.matrix(i, i).real() > f.matrix(pick, pick).real()))
        pick = i;
    }
    chosen[static_cast<std::size_t>(pick)] = true;
    for (Eigen::Index i = 0; i < n; ++i) gain[i] += 2.0 * f.matrix(i, pick).real();
  }
  out.selection = SelectionVector(std::move(chosen));
  return out;
}

SelectionVector select_greedy(const SelectionKernel& f, int k) {
  const Eigen::Index n = f.size();
  check_k(n, k);
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  RVector gain = f.matrix.diagonal().real();
  for (int step = 0; step < k; ++step) {
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!chosen[static_cast<std::size_t>(i)] && (pick < 0 || gain[i] > gain[pick])) pick = i;
    chosen[static_cast<std::size_t>(pick)] = true;
    for (Eigen::Index i = 0; i < n; ++i) gain[i] += 2.0 * f.matrix(i, pick).real();
  }
  return SelectionVector(std::move(chosen));
}

SelectionVector select_greedy(const ChannelMatrix& channel, const PhaseVector& a, int k) {
  return select_greedy(selection_kernel(channel, a), k);
}

SelectionVector select_min_noise(const RVector& sensor_noise_vars, int k) {
  const Eigen::Index n = sensor_noise_vars.size();
  check_k(n, k);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return sensor_noise_vars[a] < sensor_noise_vars[b]; });
  order.resize(static_cast<std::size_t>(k));
  return SelectionVector::from_indices(n, order);
}

ExhaustiveResult select_exhaustive(const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                                   double fc_noise_var, int k, const PhaseOptimizer& optimizer) {
  const Eigen::Index n = channel.n_sensors();
  check_k(n, k);
  if (sensor_noise_vars.size() != n) throw std::invalid_argument("select_exhaustive: noise length != N");
  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos = combos * static_cast<double>(n - i) / (i + 1);
  if (combos > kExhaustiveBudget)
    throw std::invalid_argument("select_exhaustive: C(N, K) exceeds the evaluation budget");

  ExhaustiveResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  while (true) {
    const SelectionVector x = SelectionVector::from_indices(n, idx);
    const QuadraticKernel b =
        quadratic_kernel(restrict_channel(channel, x), restrict_vector(sensor_noise_vars, x), fc_noise_var);
    PhaseVector a = optimizer(b);
    const double value = linalg::quad_form(a.entries(), b.matrix());
    ++best.subsets;
    if (value > best.objective) {
      best.objective = value;
      best.selection = x;
      best.phases = std::move(a);
    }
    // Next combination in lexicographic order.
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  return best;
}

double reoptimized_objective(const SelectionVector& x, const ChannelMatrix& channel,
                             const RVector& sensor_noise_vars, double fc_noise_var,
                             const PhaseOptimizer& optimizer, const PhaseVector* original) {
  if (x.count() < 1) throw std::invalid_argument("reoptimized_objective: empty selection");
  const QuadraticKernel b =
      quadratic_kernel(restrict_channel(channel, x), restrict_vector(sensor_noise_vars, x), fc_noise_var);
  double value = linalg::quad_form(optimizer(b).entries(), b.matrix());
  if (original) value = std::max(value, linalg::quad_form(original->restricted(x.indices()).entries(), b.matrix()));
  return value;
}

}  // namespace psf
