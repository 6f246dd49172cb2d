#include "psf/phase_sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psf/linalg.hpp"

namespace psf {

RMatrix RealSdpData::embedded_objective() const {
  const Eigen::Index n = size();
  RMatrix s(2 * n, 2 * n);
  s << b_real, -b_imag, b_imag, b_real;
  return s;
}

double RealSdpData::objective(const RMatrix& a_real, const RMatrix& a_imag) const {
  return (b_real.cwiseProduct(a_real.transpose())).sum() - (b_imag.cwiseProduct(a_imag.transpose())).sum();
}

RMatrix RealSdpData::embed(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  RMatrix s(2 * n, 2 * n);
  s << a.real(), -a.imag(), a.imag(), a.real();
  return s;
}

CMatrix RealSdpData::extract(const RMatrix& block) {
  const Eigen::Index n = block.rows() / 2;
  CMatrix a(n, n);
  a.real() = block.topLeftCorner(n, n);
  a.imag() = block.bottomLeftCorner(n, n);
  return a;
}

RealSdpData build_real_sdp(const QuadraticKernel& b) { return RealSdpData{b.matrix().real(), b.matrix().imag()}; }

namespace {

constexpr double kStepFraction = 0.98;

// Largest alpha in (0, 1] keeping S + alpha*D positive definite, scaled by kStepFraction.
double step_length(const CMatrix& s, const CMatrix& d) {
  const Eigen::LLT<CMatrix> llt(s);
  CMatrix w = llt.matrixL().solve(d);
  w = llt.matrixL().solve(w.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -kStepFraction / lmin);
}

// <X, Z> = Re tr(X Z) for Hermitian X, Z.
double inner(const CMatrix& x, const CMatrix& z) { return (x.array() * z.conjugate().array()).real().sum(); }

}  // namespace

SdpSolution solve_diag_sdp(const QuadraticKernel& b, SdpOptions options) {
  const Eigen::Index n = b.size();
  if (n < 1) throw std::invalid_argument("solve_diag_sdp: empty kernel");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("solve_diag_sdp: tolerance must be > 0");

  SdpSolution out;
  const double scale = b.matrix().diagonal().real().cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) {
    out.a_opt = CMatrix::Identity(n, n);
    out.converged = true;
    return out;
  }
  const CMatrix bs = b.matrix() / scale;
  const RVector ones = RVector::Ones(n);

  CMatrix x = CMatrix::Identity(n, n);
  RVector y = bs.cwiseAbs().rowwise().sum() + ones;
  CMatrix z = -bs;
  z.diagonal() += y.cast<Complex>();

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double primal = inner(bs, x);
    const double gap = inner(x, z);
    const double infeas = (ones - x.diagonal().real()).cwiseAbs().maxCoeff();
    if (gap / (1.0 + std::abs(primal)) <= options.tolerance && infeas <= 1e-9) {
      out.converged = true;
      break;
    }
    const double mu = gap / static_cast<double>(n);

    const Eigen::LLT<CMatrix> zllt(z);
    const CMatrix zinv = zllt.solve(CMatrix::Identity(n, n));
    // Schur complement M_ik = Re(Z⁻¹_ik X_ki).
    const RMatrix schur = (zinv.array() * x.transpose().array()).real().matrix();
    const Eigen::LLT<RMatrix> mllt(schur);
    const RVector zinv_diag = zinv.diagonal().real();

    // HKM direction; diag(dX) = e - diag(X) closes the primal residual.
    auto direction = [&](double target_mu, const CMatrix* corr, CMatrix& dx, RVector& dy) {
      RVector rhs = target_mu * zinv_diag - ones;
      if (corr) rhs -= corr->diagonal().real();
      dy = mllt.solve(rhs);
      // Z⁻¹ Diag(dy) X
      CMatrix t = zinv * dy.asDiagonal() * x;
      dx = target_mu * zinv - x - t;
      if (corr) dx -= *corr;
      dx = linalg::hermitize(dx);
    };

    CMatrix dx;
    RVector dy;
    direction(0.0, nullptr, dx, dy);
    CMatrix dz = CMatrix::Zero(n, n);
    dz.diagonal() = dy.cast<Complex>();
    double ap = step_length(x, dx);
    double ad = step_length(z, dz);
    const double pred_gap = inner(x + ap * dx, z + ad * dz);
    const double sigma = std::pow(std::clamp(pred_gap / gap, 0.0, 1.0), 3.0);

    const CMatrix corr = zinv * dz * dx;
    direction(sigma * mu, &corr, dx, dy);
    dz.diagonal() = dy.cast<Complex>();
    ap = step_length(x, dx);
    ad = step_length(z, dz);

    x = linalg::hermitize(x + ap * dx);
    y += ad * dy;
    z = -bs;
    z.diagonal() += y.cast<Complex>();
  }

  // Exact unit diagonal: X <- D^-1/2 X D^-1/2 keeps X PSD.
  const RVector d = x.diagonal().real().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  x = linalg::hermitize(d.asDiagonal() * x * d.asDiagonal());
  for (Eigen::Index i = 0; i < n; ++i) x(i, i) = 1.0;

  out.a_opt = x;
  out.objective = inner(b.matrix(), x);
  out.dual_objective = scale * y.sum();
  out.duality_gap = std::max(0.0, out.dual_objective - out.objective);
  out.relative_gap = out.duality_gap / (1.0 + std::abs(out.objective));
  out.iterations = it;
  return out;
}

PhaseVector extract_rank_one(const SdpSolution& solution, const QuadraticKernel& b, const SeedStream& stream,
                             int n_rounds) {
  const Eigen::Index n = b.size();
  if (solution.a_opt.rows() != n) throw std::invalid_argument("extract_rank_one: size mismatch");
  if (n_rounds < 1) throw std::invalid_argument("extract_rank_one: n_rounds must be >= 1");

  // A* = CᴴC with C = diag(sqrt(lambda)) Vᴴ over the retained spectrum.
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(solution.a_opt));
  const RVector lambda = es.eigenvalues().cwiseMax(0.0);
  // Eigenvalues at the level of the duality gap are interior-point residue.
  const double floor = std::max(1e-10, 10.0 * solution.relative_gap);
  const double threshold = floor * std::max(lambda.maxCoeff(), 1e-300);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = n - 1; i >= 0; --i)
    if (lambda[i] > threshold) kept.push_back(i);
  if (kept.empty()) kept.push_back(n - 1);

  const auto r = static_cast<Eigen::Index>(kept.size());
  CMatrix c(r, n);
  for (Eigen::Index k = 0; k < r; ++k)
    c.row(k) = std::sqrt(lambda[kept[static_cast<std::size_t>(k)]]) *
               es.eigenvectors().col(kept[static_cast<std::size_t>(k)]).adjoint();

  const CMatrix b_tilde = linalg::hermitize(c * b.matrix() * c.adjoint());
  const Eigen::SelfAdjointEigenSolver<CMatrix> bes(b_tilde);
  const CMatrix w = c.adjoint() * bes.eigenvectors();  // N x r

  PhaseVector best;
  double best_value = -std::numeric_limits<double>::infinity();
  CVector rvec(r);
  for (int round = 0; round < n_rounds; ++round) {
    Rng rng = stream.child(static_cast<std::uint64_t>(round)).engine();
    for (Eigen::Index k = 0; k < r; ++k) rvec[k] = std::polar(1.0, uniform(rng, 0.0, kTwoPi));
    PhaseVector candidate = PhaseVector::from_complex(w * rvec);
    const double value = linalg::quad_form(candidate.entries(), b.matrix());
    if (value > best_value) {
      best_value = value;
      best = std::move(candidate);
    }
  }
  return best;
}

SdpPhaseResult optimize_phases_sdp(const QuadraticKernel& b, const SeedStream& stream, SdpOptions options,
                                   int n_rounds) {
  SdpPhaseResult out;
  out.relaxation = solve_diag_sdp(b, options);
  out.phases = extract_rank_one(out.relaxation, b, stream, n_rounds);
  out.objective = linalg::quad_form(out.phases.entries(), b.matrix());
  out.n_rounds = n_rounds;
  return out;
}

}  // namespace psf
