#ifndef PSF_PHASE_SDP_HPP
#define PSF_PHASE_SDP_HPP

#include "psf/estimator.hpp"
#include "psf/rng.hpp"
#include "psf/types.hpp"

namespace psf {

/// Real form of max tr(BA) s.t. diag(A) = 1, A ⪰ 0:
///   max tr(B_r A_r - B_i A_i)  s.t.  diag(A_r) = 1,  [[A_r, -A_i], [A_i, A_r]] ⪰ 0.
struct RealSdpData {
  RMatrix b_real;
  RMatrix b_imag;

  Eigen::Index size() const { return b_real.rows(); }

  /// [[B_r, -B_i], [B_i, B_r]]; its trace inner product with embed(A) is 2 tr(BA).
  RMatrix embedded_objective() const;

  /// tr(B_r A_r - B_i A_i)
  double objective(const RMatrix& a_real, const RMatrix& a_imag) const;

  static RMatrix embed(const CMatrix& a);
  /// Inverse of embed(); reads the left column blocks.
  static CMatrix extract(const RMatrix& block);
};

RealSdpData build_real_sdp(const QuadraticKernel& b);

struct SdpOptions {
  double tolerance = 1e-7;  // relative duality gap
  int max_iterations = 100;
};

struct SdpSolution {
  CMatrix a_opt;                // Hermitian PSD, unit diagonal
  double objective = 0.0;       // tr(B A*)
  double dual_objective = 0.0;  // sum(y) with Diag(y) - B ⪰ 0; upper bound on the relaxation
  double duality_gap = 0.0;     // dual_objective - objective, >= 0
  double relative_gap = 0.0;    // duality_gap / (1 + |objective|)
  int iterations = 0;
  bool converged = false;
};

/// Primal-dual interior-point method (HKM direction, Mehrotra
/// predictor-corrector) for the unit-diagonal SDP, carried out in complex
/// Hermitian arithmetic, which is isomorphic to the real form above.
/// On hitting the iteration cap the last iterate is returned with
/// converged = false.
SdpSolution solve_diag_sdp(const QuadraticKernel& b, SdpOptions options = {});

inline constexpr int kDefaultRounds = 100;

/// Randomised rank-one extraction. Factor A* = CᴴC, diagonalise CBCᴴ = U Λ Uᴴ,
/// draw r_i = exp(j w_i) with w_i ~ U[0, 2pi), form ã = CᴴUr and take
/// a_i = exp(j arg ã_i). Round k draws from stream.child(k); the best
/// aᴴBa wins, lowest round on ties. C keeps the eigenvalues of A* above
/// max(1e-10, 10 * relative_gap) * lambda_max.
PhaseVector extract_rank_one(const SdpSolution& solution, const QuadraticKernel& b, const SeedStream& stream,
                             int n_rounds = kDefaultRounds);

struct SdpPhaseResult {
  PhaseVector phases;
  double objective = 0.0;  // aᴴBa of the returned phases
  SdpSolution relaxation;
  int n_rounds = 0;
};

SdpPhaseResult optimize_phases_sdp(const QuadraticKernel& b, const SeedStream& stream, SdpOptions options = {},
                                   int n_rounds = kDefaultRounds);

}  // namespace psf

#endif  // PSF_PHASE_SDP_HPP
