#ifndef PSF_LP_SIMPLEX_HPP
#define PSF_LP_SIMPLEX_HPP

#include <string>
#include <vector>

#include "psf/types.hpp"

namespace psf {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

/// maximise cᵀx  s.t.  A x (<=, >=, =) b,  0 <= x <= upper.
/// Entries of `upper` may be +infinity.
struct LinearProgram {
  RVector objective;
  RMatrix constraints;
  RVector rhs;
  std::vector<RowSense> senses;
  RVector upper;

  /// Empty program with n variables bounded by [0, +inf).
  static LinearProgram with_variables(Eigen::Index n);
  /// Appends one row; `coeffs` are (column, value) pairs.
  void add_row(const std::vector<std::pair<Eigen::Index, double>>& coeffs, RowSense sense, double rhs_value);
  Eigen::Index n_variables() const { return objective.size(); }
  Eigen::Index n_rows() const { return rhs.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(LpStatus status);

struct LpOptions {
  int max_iterations = 200000;
  double tolerance = 1e-9;
  /// Consecutive degenerate pivots before switching from largest-coefficient
  /// pricing to Bland's rule; Bland stays on until a step makes progress.
  int degenerate_switch = 50;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  RVector x;
  double objective = 0.0;
  /// Row multipliers: >= 0 for <= rows, <= 0 for >= rows, free for = rows.
  RVector duals;
  /// bᵀy + sum_j upper_j max(0, c_j - a_jᵀy); equals `objective` at optimality.
  double dual_objective = 0.0;
  int iterations = 0;
};

/// Two-phase bounded-variable primal simplex on a dense tableau.
LpResult solve_lp(const LinearProgram& lp, LpOptions options = {});

}  // namespace psf

#endif  // PSF_LP_SIMPLEX_HPP
