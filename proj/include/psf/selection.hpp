#ifndef PSF_SELECTION_HPP
#define PSF_SELECTION_HPP

#include <functional>
#include <vector>

#include "psf/estimator.hpp"
#include "psf/lp_simplex.hpp"

namespace psf {

/// Boolean mask over N sensors.
class SelectionVector {
 public:
  SelectionVector() = default;
  explicit SelectionVector(std::vector<bool> mask);
  static SelectionVector from_indices(Eigen::Index n, const std::vector<Eigen::Index>& indices);

  const std::vector<bool>& mask() const { return mask_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(mask_.size()); }
  Eigen::Index count() const;
  /// Selected sensors in increasing order.
  std::vector<Eigen::Index> indices() const;
  bool operator==(const SelectionVector& other) const { return mask_ == other.mask_; }

 private:
  std::vector<bool> mask_;
};

/// F = DᴴHᴴHD with D = diag(a); F_ii = ‖h_i‖².
struct SelectionKernel {
  CMatrix matrix;
  Eigen::Index size() const { return matrix.rows(); }
};

SelectionKernel selection_kernel(const ChannelMatrix& channel, const PhaseVector& a);

/// Columns of H in the selection, in index order.
ChannelMatrix restrict_channel(const ChannelMatrix& channel, const SelectionVector& x);
RVector restrict_vector(const RVector& v, const SelectionVector& x);

/// xᵀDᴴHᴴ(HVXHᴴ + sigma_n^2 I)^-1 HDx, i.e. a_Sᴴ B_S a_S on the selected sub-network.
double selection_objective(const SelectionVector& x, const PhaseVector& a, const ChannelMatrix& channel,
                           const RVector& sensor_noise_vars, double fc_noise_var);

struct LpSelectionOptions {
  /// Drop pair constraints that cannot bind at an optimum given the sign of
  /// Re F_ij (upper links when Re F_ij < 0, the lower link when Re F_ij > 0).
  /// The optimal value and optimal x are unchanged.
  bool prune_redundant = true;
  LpOptions lp;
};

struct LpSelectionResult {
  SelectionVector selection;
  RVector relaxed;  // LP values of x_i
  double lp_objective = 0.0;
  double dual_objective = 0.0;
  LpStatus status = LpStatus::kOptimal;
  int iterations = 0;
};

/// The linearised Boolean program as an LP: variables x_i in [0, 1] then
/// y_ij (i < j) in row-major pair order.
LinearProgram selection_lp(const SelectionKernel& f, int k, bool prune_redundant = false);

/// Solves the LP relaxation and keeps the K largest x_i. Values within 1e-7
/// of each other count as tied; ties go to the larger marginal gain
/// F_kk + 2 Re sum_{j in S} F_kj over the sensors already kept, then to the
/// larger F_kk, then to the lower index. Throws std::runtime_error when the
/// LP solver fails.
LpSelectionResult select_lp(const SelectionKernel& f, int k, LpSelectionOptions options = {});

/// Starts from the strongest channel and adds the sensor with the largest
/// ‖h_k‖² + 2 Re sum_{j in S} conj(a_k) a_j h_kᴴh_j; ties to the lower index.
SelectionVector select_greedy(const SelectionKernel& f, int k);
SelectionVector select_greedy(const ChannelMatrix& channel, const PhaseVector& a, int k);

/// K smallest sensor noise variances, ties to the lower index.
SelectionVector select_min_noise(const RVector& sensor_noise_vars, int k);

/// Chooses phases for a sub-network given its kernel.
using PhaseOptimizer = std::function<PhaseVector(const QuadraticKernel&)>;

inline constexpr double kExhaustiveBudget = 1e5;

struct ExhaustiveResult {
  SelectionVector selection;
  PhaseVector phases;  // optimiser output on the winning subset
  double objective = 0.0;
  long long subsets = 0;
};

/// Evaluates every K-subset with phases re-optimised on the subset; the
/// first subset in lexicographic order wins ties. Throws when C(N, K)
/// exceeds kExhaustiveBudget.
ExhaustiveResult select_exhaustive(const ChannelMatrix& channel, const RVector& sensor_noise_vars,
                                   double fc_noise_var, int k, const PhaseOptimizer& optimizer);

/// Objective after re-optimising the phases of the selected sensors. When
/// `original` (full-length) is given, its restriction to the selection is
/// also evaluated and the better of the two is returned.
double reoptimized_objective(const SelectionVector& x, const ChannelMatrix& channel,
                             const RVector& sensor_noise_vars, double fc_noise_var,
                             const PhaseOptimizer& optimizer, const PhaseVector* original = nullptr);

}  // namespace psf

#endif  // PSF_SELECTION_HPP
