#include "psf/lp_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : m_(rows), n_(cols), t_(static_cast<std::size_t>(rows * cols), 0.0) {}

  double& at(Eigen::Index i, Eigen::Index j) { return t_[static_cast<std::size_t>(i * n_ + j)]; }
  double at(Eigen::Index i, Eigen::Index j) const { return t_[static_cast<std::size_t>(i * n_ + j)]; }
  double* row(Eigen::Index i) { return t_.data() + i * n_; }
  Eigen::Index rows() const { return m_; }
  Eigen::Index cols() const { return n_; }

 private:
  Eigen::Index m_;
  Eigen::Index n_;
  std::vector<double> t_;
};

struct State {
  Tableau t;
  std::vector<double> beta;         // values of the basic variables
  std::vector<Eigen::Index> basis;  // basic column per row
  std::vector<bool> is_basic;
  std::vector<bool> at_upper;
  std::vector<bool> forbidden;      // may not enter the basis
  std::vector<double> upper;
  std::vector<double> d1;           // phase-one reduced costs
  std::vector<double> d2;           // phase-two reduced costs
  int iterations = 0;
};

void pivot(State& s, Eigen::Index r, Eigen::Index j) {
  Tableau& t = s.t;
  const Eigen::Index n = t.cols();
  double* pr = t.row(r);
  const double inv = 1.0 / pr[j];
  std::vector<Eigen::Index> nz;
  nz.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (pr[k] != 0.0) {
      pr[k] *= inv;
      nz.push_back(k);
    }
  }
  pr[j] = 1.0;
  auto eliminate = [&](double* row) {
    const double f = row[j];
    if (f == 0.0) return;
    for (Eigen::Index k : nz) row[k] -= f * pr[k];
    row[j] = 0.0;
  };
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    if (i != r) eliminate(t.row(i));
  eliminate(s.d1.data());
  eliminate(s.d2.data());
}

// Runs simplex iterations on the cost row `d`; returns kOptimal, kUnbounded or kIterationLimit.
LpStatus iterate(State& s, std::vector<double>& d, const LpOptions& opt) {
  const Eigen::Index m = s.t.rows();
  const Eigen::Index n = s.t.cols();
  int degenerate_streak = 0;
  while (true) {
    if (s.iterations >= opt.max_iterations) return LpStatus::kIterationLimit;
    const bool bland = degenerate_streak >= opt.degenerate_switch;

    Eigen::Index enter = -1;
    double best = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (s.is_basic[j] || s.forbidden[j]) continue;
      const double dj = d[j];
      const bool improving = s.at_upper[j] ? dj < -opt.tolerance : dj > opt.tolerance;
      if (!improving) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (std::abs(dj) > best) {
        best = std::abs(dj);
        enter = j;
      }
    }
    if (enter < 0) return LpStatus::kOptimal;

    const double dir = s.at_upper[enter] ? -1.0 : 1.0;
    double theta = s.upper[enter];
    Eigen::Index leave = -1;
    double leave_alpha = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double alpha = s.t.at(i, enter) * dir;
      double lim;
      if (alpha > kPivotTol) {
        lim = std::max(s.beta[i], 0.0) / alpha;
      } else if (alpha < -kPivotTol) {
        const double ub = s.upper[s.basis[i]];
        if (ub == kInf) continue;
        lim = std::max(ub - s.beta[i], 0.0) / -alpha;
      } else {
        continue;
      }
      bool take = lim < theta - 1e-12;
      if (!take && leave >= 0 && lim <= theta + 1e-12) {
        take = bland ? s.basis[i] < s.basis[leave] : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        theta = std::min(theta, lim);
        leave = i;
        leave_alpha = alpha;
      }
    }
    if (theta == kInf) return LpStatus::kUnbounded;
    ++s.iterations;
    degenerate_streak = theta <= 1e-12 ? degenerate_streak + 1 : 0;

    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = s.t.at(i, enter);
      if (a != 0.0) s.beta[i] -= theta * dir * a;
    }
    if (leave < 0) {
      s.at_upper[enter] = !s.at_upper[enter];
      continue;
    }
    const Eigen::Index out = s.basis[leave];
    s.is_basic[out] = false;
    s.at_upper[out] = leave_alpha < 0.0;
    s.beta[leave] = s.at_upper[enter] ? s.upper[enter] - theta : theta;
    s.at_upper[enter] = false;
    s.is_basic[enter] = true;
    s.basis[leave] = enter;
    pivot(s, leave, enter);
  }
}

}  // namespace

LinearProgram LinearProgram::with_variables(Eigen::Index n) {
  LinearProgram lp;
  lp.objective = RVector::Zero(n);
  lp.constraints = RMatrix::Zero(0, n);
  lp.rhs = RVector::Zero(0);
  lp.upper = RVector::Constant(n, kInf);
  return lp;
}

void LinearProgram::add_row(const std::vector<std::pair<Eigen::Index, double>>& coeffs, RowSense sense,
                            double rhs_value) {
  const Eigen::Index r = constraints.rows();
  constraints.conservativeResize(r + 1, Eigen::NoChange);
  constraints.row(r).setZero();
  for (const auto& [col, value] : coeffs) constraints(r, col) += value;
  rhs.conservativeResize(r + 1);
  rhs[r] = rhs_value;
  senses.push_back(sense);
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpResult solve_lp(const LinearProgram& lp, LpOptions options) {
  const Eigen::Index nv = lp.n_variables();
  const Eigen::Index m = lp.n_rows();
  if (lp.constraints.rows() != m || lp.constraints.cols() != nv || lp.upper.size() != nv ||
      static_cast<Eigen::Index>(lp.senses.size()) != m)
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  for (Eigen::Index j = 0; j < nv; ++j)
    if (!(lp.upper[j] >= 0.0)) throw std::invalid_argument("solve_lp: upper bounds must be >= 0");

  // Rows are flipped so that b >= 0; each row then owns one identity column
  // (its slack for <=, its artificial otherwise).
  std::vector<double> flip(static_cast<std::size_t>(m));
  std::vector<RowSense> sense(lp.senses);
  Eigen::Index n_extra = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    flip[i] = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
    if (flip[i] < 0.0 && sense[i] != RowSense::kEqual)
      sense[i] = sense[i] == RowSense::kLessEqual ? RowSense::kGreaterEqual : RowSense::kLessEqual;
    n_extra += sense[i] == RowSense::kGreaterEqual ? 2 : 1;
  }
  const Eigen::Index n = nv + n_extra;

  const double cscale = nv > 0 ? std::max(lp.objective.cwiseAbs().maxCoeff(), 1e-300) : 1.0;

  State s{Tableau(m, n), std::vector<double>(m), std::vector<Eigen::Index>(m),
          std::vector<bool>(n, false), std::vector<bool>(n, false), std::vector<bool>(n, false),
          std::vector<double>(n, kInf), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (Eigen::Index j = 0; j < nv; ++j) s.upper[j] = lp.upper[j];

  std::vector<Eigen::Index> identity_col(static_cast<std::size_t>(m));
  std::vector<bool> artificial(n, false);
  Eigen::Index next = nv;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < nv; ++j) s.t.at(i, j) = flip[i] * lp.constraints(i, j);
    s.beta[i] = flip[i] * lp.rhs[i];
    if (sense[i] == RowSense::kLessEqual) {
      s.t.at(i, next) = 1.0;
      identity_col[i] = next++;
    } else {
      if (sense[i] == RowSense::kGreaterEqual) s.t.at(i, next++) = -1.0;
      s.t.at(i, next) = 1.0;
      artificial[next] = true;
      identity_col[i] = next++;
    }
    s.basis[i] = identity_col[i];
    s.is_basic[identity_col[i]] = true;
  }

  // Reduced costs d = c - c_Bᵀ T; phase two has zero basic costs initially.
  for (Eigen::Index j = 0; j < nv; ++j) s.d2[j] = lp.objective[j] / cscale;
  bool any_artificial = false;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!artificial[j]) continue;
    any_artificial = true;
    s.d1[j] = -1.0;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!artificial[s.basis[i]]) continue;
    for (Eigen::Index j = 0; j < n; ++j) s.d1[j] += s.t.at(i, j);
  }

  LpResult out;
  if (any_artificial) {
    const LpStatus st = iterate(s, s.d1, options);
    out.iterations = s.iterations;
    if (st == LpStatus::kIterationLimit) {
      out.status = st;
      return out;
    }
    double infeas = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (artificial[s.basis[i]]) infeas += std::max(s.beta[i], 0.0);
    const double bscale = 1.0 + lp.rhs.cwiseAbs().maxCoeff();
    if (infeas > 1e-7 * bscale) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!artificial[j]) continue;
      s.upper[j] = 0.0;
      s.forbidden[j] = true;
      if (!s.is_basic[j]) s.at_upper[j] = false;
    }
  }

  out.status = iterate(s, s.d2, options);
  out.iterations = s.iterations;
  if (out.status != LpStatus::kOptimal) return out;

  // Recompute basic values from B⁻¹ (the identity columns) to shed drift.
  RVector b_eff(m);
  for (Eigen::Index i = 0; i < m; ++i) b_eff[i] = flip[i] * lp.rhs[i];
  for (Eigen::Index j = 0; j < nv; ++j) {
    if (s.is_basic[j] || !s.at_upper[j]) continue;
    for (Eigen::Index i = 0; i < m; ++i) b_eff[i] -= flip[i] * lp.constraints(i, j) * s.upper[j];
  }
  out.x = RVector::Zero(nv);
  for (Eigen::Index j = 0; j < nv; ++j)
    if (!s.is_basic[j] && s.at_upper[j]) out.x[j] = s.upper[j];
  for (Eigen::Index i = 0; i < m; ++i) {
    double v = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) v += s.t.at(i, identity_col[k]) * b_eff[k];
    const Eigen::Index col = s.basis[i];
    if (col < nv) out.x[col] = std::clamp(v, 0.0, s.upper[col]);
  }
  out.objective = lp.objective.dot(out.x);

  out.duals.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) out.duals[i] = -flip[i] * s.d2[identity_col[i]] * cscale;
  const RVector reduced = lp.objective - lp.constraints.transpose() * out.duals;
  out.dual_objective = lp.rhs.dot(out.duals);
  for (Eigen::Index j = 0; j < nv; ++j) {
    if (reduced[j] <= 1e-12 * cscale) continue;
    out.dual_objective += lp.upper[j] == kInf ? kInf : lp.upper[j] * reduced[j];
  }
  return out;
}

}  // namespace psf
