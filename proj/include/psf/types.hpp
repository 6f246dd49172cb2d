#ifndef PSF_TYPES_HPP
#define PSF_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace psf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Raised when aᴴBa is numerically zero, so no unbiased estimate exists.
class UnestimableError : public std::runtime_error {
 public:
  explicit UnestimableError(const std::string& what) : std::runtime_error(what) {}
};

/// Length-N vector of unit-modulus sensor phase factors.
///
/// Every constructor path guarantees |a_i| = 1 to within 1e-12.
class PhaseVector {
 public:
  PhaseVector() = default;

  /// Validates that every entry already has unit modulus.
  explicit PhaseVector(CVector entries);

  /// a_i = exp(j * angles_i).
  static PhaseVector from_angles(const RVector& angles);

  /// a_i = exp(j * arg(z_i)); exact zeros map to 1.
  /// `zero_entries`, when given, receives the number of such entries.
  static PhaseVector from_complex(const CVector& z, int* zero_entries = nullptr);

  static PhaseVector ones(Eigen::Index n);

  const CVector& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.size(); }
  Complex operator[](Eigen::Index i) const { return entries_[i]; }

  /// Multiplies every entry by exp(j * phi).
  PhaseVector rotated(double phi) const;

  /// Keeps entries whose index appears in `indices`, in that order.
  template <typename IndexRange>
  PhaseVector restricted(const IndexRange& indices) const {
    CVector out(static_cast<Eigen::Index>(std::size(indices)));
    Eigen::Index k = 0;
    for (auto i : indices) out[k++] = entries_[static_cast<Eigen::Index>(i)];
    return PhaseVector(std::move(out));
  }

 private:
  CVector entries_;
};

}  // namespace psf

#endif  // PSF_TYPES_HPP
