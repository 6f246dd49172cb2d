#ifndef PSF_LINALG_HPP
#define PSF_LINALG_HPP

#include "psf/types.hpp"

namespace psf::linalg {

/// (A + Aᴴ) / 2
CMatrix hermitize(const CMatrix& a);

/// Re(aᴴ B a). B is assumed Hermitian.
double quad_form(const CVector& a, const CMatrix& b);

/// Largest eigenvalue of a Hermitian matrix.
double lambda_max(const CMatrix& b);

/// Rotates `v` so that its largest-magnitude entry is real and positive.
/// Ties go to the lowest index. A zero vector is returned unchanged.
void fix_phase(Eigen::Ref<CVector> v);

struct EigenPairs {
  RVector values;   // descending
  CMatrix vectors;  // columns, phase-fixed with fix_phase
};

/// Top-k eigenpairs of a Hermitian PSD matrix, descending.
///
/// Small matrices use a dense eigensolver. Larger ones use block subspace
/// iteration with Rayleigh-Ritz, costing O(k N^2) per sweep, and fall back
/// to the dense solver if the Ritz residuals stall.
EigenPairs top_eigenpairs(const CMatrix& b, int k);

/// Hermitian eigendecomposition, eigenvalues descending.
EigenPairs full_eigenpairs(const CMatrix& b);

}  // namespace psf::linalg

#endif  // PSF_LINALG_HPP
