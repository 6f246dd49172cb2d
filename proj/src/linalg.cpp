#include "psf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace psf::linalg {

namespace {

constexpr Eigen::Index kDenseCutoff = 32;
constexpr int kOversample = 8;
constexpr int kMaxSweeps = 200;

EigenPairs descending(const Eigen::SelfAdjointEigenSolver<CMatrix>& es, Eigen::Index k) {
  const Eigen::Index n = es.eigenvalues().size();
  EigenPairs out;
  out.values.resize(k);
  out.vectors.resize(es.eigenvectors().rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.values[i] = es.eigenvalues()[n - 1 - i];
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    fix_phase(out.vectors.col(i));
  }
  return out;
}

}  // namespace

CMatrix hermitize(const CMatrix& a) {
  CMatrix h = 0.5 * (a + a.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return h;
}

double quad_form(const CVector& a, const CMatrix& b) { return a.dot(b * a).real(); }

double lambda_max(const CMatrix& b) {
  if (b.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void fix_phase(Eigen::Ref<CVector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best_abs * (1.0 + 1e-12)) {
      best_abs = m;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::polar(1.0, -std::arg(v[best]));
  v[best] = std::abs(v[best]);
}

EigenPairs full_eigenpairs(const CMatrix& b) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
  return descending(es, b.rows());
}

EigenPairs top_eigenpairs(const CMatrix& b, int k) {
  const Eigen::Index n = b.rows();
  if (k < 1 || k > n) throw std::invalid_argument("top_eigenpairs: k out of range");
  const Eigen::Index p = std::min<Eigen::Index>(n, k + kOversample);
  if (n <= kDenseCutoff || p >= n / 2) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
    return descending(es, k);
  }

  // Fixed starting block keeps the result deterministic.
  std::mt19937_64 gen(0x5eed5eedULL);
  std::normal_distribution<double> nd;
  CMatrix omega(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = Complex(nd(gen), nd(gen));

  CMatrix z = b * omega;
  CMatrix q = Eigen::HouseholderQR<CMatrix>(z).householderQ() * CMatrix::Identity(n, p);
  const double scale = std::max(b.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    z.noalias() = b * q;
    CMatrix t = hermitize(q.adjoint() * z);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(t);
    // Ritz residual for the wanted top-k pairs.
    double worst = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const Eigen::Index c = p - 1 - i;
      CVector s = es.eigenvectors().col(c);
      CVector r = z * s - es.eigenvalues()[c] * (q * s);
      worst = std::max(worst, r.norm());
    }
    if (worst <= 1e-11 * scale) {
      EigenPairs out;
      out.values.resize(k);
      out.vectors.resize(n, k);
      for (Eigen::Index i = 0; i < k; ++i) {
        const Eigen::Index c = p - 1 - i;
        out.values[i] = es.eigenvalues()[c];
        out.vectors.col(i) = (q * es.eigenvectors().col(c)).normalized();
        fix_phase(out.vectors.col(i));
      }
      return out;
    }
    q = Eigen::HouseholderQR<CMatrix>(z).householderQ() * CMatrix::Identity(n, p);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
  return descending(es, k);
}

}  // namespace psf::linalg
