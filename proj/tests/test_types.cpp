#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "psf/rng.hpp"
#include "psf/types.hpp"

using namespace psf;

TEST_CASE("phase vectors stay on the unit circle") {
  RVector ang(4);
  ang << 0.0, 1.0, -2.5, 100.0;
  const PhaseVector a = PhaseVector::from_angles(ang);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(std::abs(a[i]) - 1.0) <= 1e-12);
  CHECK(std::arg(a[1]) == doctest::Approx(1.0));

  CVector z(3);
  z << Complex(3, 4), Complex(0, 0), Complex(-1e-300, 0);
  int zeros = -1;
  const PhaseVector b = PhaseVector::from_complex(z, &zeros);
  CHECK(zeros == 1);
  CHECK(std::abs(b[0] - Complex(0.6, 0.8)) < 1e-15);
  CHECK(b[1] == Complex(1.0, 0.0));
  CHECK(b[2].real() == doctest::Approx(-1.0));

  CVector bad(2);
  bad << 1.0, 1.1;
  CHECK_THROWS_AS(PhaseVector{bad}, std::invalid_argument);

  PhaseVector r = a;
  for (int k = 0; k < 10000; ++k) r = r.rotated(0.37);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(std::abs(r[i]) - 1.0) <= 1e-12);
  CHECK(std::abs(r[0] / a[0] - std::polar(1.0, 3700.0)) < 1e-9);

  const PhaseVector sub = a.restricted(std::vector<int>{3, 1});
  CHECK(sub.size() == 2);
  CHECK(sub[0] == a[3]);
  CHECK(sub[1] == a[1]);
  CHECK(PhaseVector::ones(3).entries() == CVector::Ones(3));
}

TEST_CASE("seed streams") {
  const SeedStream s(42);
  CHECK(s.child(3).value() == SeedStream(42).child(3).value());
  CHECK(s.child(StreamTag::kRounding).value() != s.child(StreamTag::kRestart).value());
  CHECK(s.child(1).value() != s.child(StreamTag::kScenario).value());
  CHECK(s.child(StreamTag::kSweepPoint, 2).value() == s.child(StreamTag::kSweepPoint).child(2).value());

  std::set<std::uint64_t> seen;
  for (std::uint64_t p = 0; p < 20; ++p)
    for (std::uint64_t r = 0; r < 50; ++r)
      seen.insert(s.child(StreamTag::kSweepPoint, p).child(StreamTag::kRealization, r).value());
  CHECK(seen.size() == 1000);

  Rng a = s.child(7).engine(), b = s.child(7).engine();
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
}

TEST_CASE("random draws") {
  Rng rng = SeedStream(5).engine();
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform(rng, 0.25, 0.75);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.25);
  CHECK(hi < 0.75);

  const int n = 200000;
  double re2 = 0.0, im2 = 0.0, cross = 0.0;
  Complex mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = complex_gaussian(rng, 2.0);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    cross += z.real() * z.imag();
    mean += z;
  }
  // each part has variance 1, so sample averages sit within ~5/sqrt(n) of target
  const double tol = 5.0 * std::sqrt(2.0 / n);
  CHECK(std::abs(re2 / n - 1.0) < tol);
  CHECK(std::abs(im2 / n - 1.0) < tol);
  CHECK(std::abs(cross / n) < tol);
  CHECK(std::abs(mean / static_cast<double>(n)) < tol);
  CHECK(complex_gaussian(rng, 0.0) == Complex(0.0, 0.0));
}
