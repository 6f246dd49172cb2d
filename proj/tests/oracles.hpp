// Independent reference computations used only by the tests.
#ifndef PSF_TESTS_ORACLES_HPP
#define PSF_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Gauss-Jordan inverse with partial pivoting.
inline CMat gauss_jordan_inverse(CMat a) {
  const Eigen::Index n = a.rows();
  CMat inv = CMat::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    a.row(col).swap(a.row(piv));
    inv.row(col).swap(inv.row(piv));
    const C p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const C f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

// Hᴴ (H V Hᴴ + s I)^-1 H by explicit inversion of the M x M matrix.
inline CMat kernel_by_inverse(const CMat& h, const RVec& v, double s) {
  CMat c = h * v.asDiagonal() * h.adjoint();
  c += s * CMat::Identity(h.rows(), h.rows());
  return h.adjoint() * gauss_jordan_inverse(c) * h;
}

inline double quad(const CVec& a, const CMat& b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < a.size(); ++j) acc += (std::conj(a[i]) * b(i, j) * a[j]).real();
  return acc;
}

// max aᴴBa over a_i in {exp(j 2 pi k / L)}, a_0 = 1, by recursion.
inline double grid_max(const CMat& b, int levels) {
  const Eigen::Index n = b.rows();
  CVec a = CVec::Ones(n);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index i) {
    if (i == n) {
      best = std::max(best, quad(a, b));
      return;
    }
    for (int k = 0; k < levels; ++k) {
      a[i] = std::polar(1.0, 2.0 * kPi * k / levels);
      rec(i + 1);
    }
  };
  if (n == 1) return b(0, 0).real();
  rec(1);
  return best;
}

// Random Hermitian PSD matrix G Gᴴ with G n x r complex Gaussian.
inline CMat random_psd(std::mt19937_64& rng, Eigen::Index n, Eigen::Index r) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat x(n, r);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < r; ++j) x(i, j) = C(g(rng), g(rng));
  return x * x.adjoint();
}

inline CMat random_channel(std::mt19937_64& rng, Eigen::Index m, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat h(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = C(g(rng), g(rng)) / std::sqrt(2.0);
  return h;
}

// Central-difference gradient of f over (Re a, Im a), packed as d/dRe + j d/dIm.
inline CVec numeric_gradient(const std::function<double(const CVec&)>& f, const CVec& a, double h) {
  CVec g(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    CVec p = a, m = a;
    p[i] += h;
    m[i] -= h;
    const double dr = (f(p) - f(m)) / (2 * h);
    p = a;
    m = a;
    p[i] += C(0, h);
    m[i] -= C(0, h);
    const double di = (f(p) - f(m)) / (2 * h);
    g[i] = C(dr, di);
  }
  return g;
}

// LP  max cᵀx  s.t.  A x <= b (rows), E x = e, 0 <= x <= u, solved by
// enumerating every basis of n active constraints.
inline double vertex_enumeration(const RVec& c, const RMat& a, const RVec& b, const RMat& e, const RVec& ev,
                                 const RVec& u) {
  const Eigen::Index n = c.size();
  // All constraints as rows g x <= h, equalities as two inequalities.
  std::vector<RVec> g;
  std::vector<double> h;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    g.push_back(a.row(i).transpose());
    h.push_back(b[i]);
  }
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    g.push_back(e.row(i).transpose());
    h.push_back(ev[i]);
    g.push_back(-e.row(i).transpose());
    h.push_back(-ev[i]);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    RVec lo = RVec::Zero(n);
    lo[j] = -1.0;
    g.push_back(lo);
    h.push_back(0.0);
    if (std::isfinite(u[j])) {
      RVec hi = RVec::Zero(n);
      hi[j] = 1.0;
      g.push_back(hi);
      h.push_back(u[j]);
    }
  }
  const int rows = static_cast<int>(g.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      RMat m(n, n);
      RVec r(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        m.row(k) = g[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])].transpose();
        r[k] = h[static_cast<std::size_t>(pick[static_cast<std::size_t>(k)])];
      }
      Eigen::FullPivLU<RMat> lu(m);
      if (lu.rank() < n) return;
      const RVec x = lu.solve(r);
      for (int k = 0; k < rows; ++k)
        if (g[static_cast<std::size_t>(k)].dot(x) > h[static_cast<std::size_t>(k)] + 1e-9) return;
      best = std::max(best, c.dot(x));
      return;
    }
    for (int k = start; k < rows; ++k) {
      pick[static_cast<std::size_t>(depth)] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace oracle

#endif  // PSF_TESTS_ORACLES_HPP
