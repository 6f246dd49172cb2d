#include "psf/phase_acma.hpp"

#include <cmath>

#include "psf/linalg.hpp"

namespace psf {

AcmaResult acma_phases(const QuadraticKernel& b, int m) {
  const Eigen::Index n = b.size();
  if (m < 1 || m > n) throw std::invalid_argument("acma_phases: m must satisfy 1 <= m <= N");
  if (n <= static_cast<Eigen::Index>(m) * m)
    throw std::invalid_argument("acma_phases: requires N > m^2 (N=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");

  const linalg::EigenPairs top = linalg::top_eigenpairs(b.matrix(), m);
  const CMatrix& um = top.vectors;  // N x m
  const Eigen::Index mm = static_cast<Eigen::Index>(m) * m;

  // Row i of P: entries conj(u_k) * u_l at index k*m + l where u = row i of U_m,
  // so that P (conj(w) ⊗ w) = |u·w|^2 - 1.
  CMatrix p(n, mm + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index l = 0; l < m; ++l) p(i, k * m + l) = std::conj(um(i, k)) * um(i, l);
    p(i, mm) = -1.0;
  }

  Eigen::JacobiSVD<CMatrix> svd(p, Eigen::ComputeThinV);
  CVector q = svd.matrixV().col(svd.matrixV().cols() - 1);
  linalg::fix_phase(q);

  // Column-wise unvec: Q(l, k) = q[k*m + l], ideally w wᴴ.
  CMatrix qt(m, m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l) qt(l, k) = q[k * m + l];
  const CMatrix s = linalg::hermitize(qt + qt.adjoint());

  // Singular vectors of a Hermitian matrix are its eigenvectors; the
  // dominant one has the largest |eigenvalue|.
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < m; ++i)
    if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[best])) best = i;
  CVector w = es.eigenvectors().col(best);
  linalg::fix_phase(w);

  AcmaResult out;
  out.m = m;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (i != best && std::abs(std::abs(es.eigenvalues()[i]) - std::abs(es.eigenvalues()[best])) <=
                         1e-12 * std::max(1.0, std::abs(es.eigenvalues()[best])))
      out.repeated_dominant = true;
  }
  out.phases = PhaseVector::from_complex(um * w, &out.zero_entries);
  out.objective = linalg::quad_form(out.phases.entries(), b.matrix());
  return out;
}

AcmaResult acma_best_m(const QuadraticKernel& b, int n_antennas, Eigen::Index n_sensors) {
  if (n_sensors <= 1) throw std::invalid_argument("acma_best_m: requires N > 1");
  if (b.size() != n_sensors) throw std::invalid_argument("acma_best_m: kernel size != N");
  if (n_antennas < 1) throw std::invalid_argument("acma_best_m: M must be >= 1");

  AcmaResult best;
  bool have = false;
  for (int m = 1; m <= n_antennas && static_cast<Eigen::Index>(m) * m < n_sensors; ++m) {
    AcmaResult candidate = acma_phases(b, m);
    if (!have || candidate.objective > best.objective) {
      best = std::move(candidate);
      have = true;
    }
  }
  return best;
}

}  // namespace psf
