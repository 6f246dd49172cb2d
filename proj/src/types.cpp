#include "psf/types.hpp"

#include <cmath>

namespace psf {

namespace {
constexpr double kUnitTolerance = 1e-12;
}

PhaseVector::PhaseVector(CVector entries) : entries_(std::move(entries)) {
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    if (!(std::abs(std::abs(entries_[i]) - 1.0) <= kUnitTolerance))
      throw std::invalid_argument("PhaseVector: entry " + std::to_string(i) + " is not unit-modulus");
  }
}

PhaseVector PhaseVector::from_angles(const RVector& angles) {
  CVector out(angles.size());
  for (Eigen::Index i = 0; i < angles.size(); ++i) out[i] = std::polar(1.0, angles[i]);
  return PhaseVector(std::move(out));
}

PhaseVector PhaseVector::from_complex(const CVector& z, int* zero_entries) {
  CVector out(z.size());
  int zeros = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] == Complex(0.0, 0.0)) {
      out[i] = 1.0;
      ++zeros;
    } else {
      out[i] = std::polar(1.0, std::arg(z[i]));
    }
  }
  if (zero_entries) *zero_entries = zeros;
  return PhaseVector(std::move(out));
}

PhaseVector PhaseVector::ones(Eigen::Index n) { return PhaseVector(CVector::Ones(n)); }

PhaseVector PhaseVector::rotated(double phi) const {
  return PhaseVector::from_complex(entries_ * std::polar(1.0, phi));
}

}  // namespace psf
