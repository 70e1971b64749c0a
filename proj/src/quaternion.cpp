#include "qek/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace qek {

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_sq(q);
  if (n2 == 0.0) {
    throw std::domain_error("inverse: zero quaternion has no inverse");
  }
  return conjugate(q) * (1.0 / n2);
}

double angle_between(const Quaternion& p, const Quaternion& q) {
  const double np = norm(p);
  const double nq = norm(q);
  if (np == 0.0 || nq == 0.0) {
    throw std::domain_error("angle_between: arguments must be nonzero");
  }
  const double dot = p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
  const double c = std::clamp(dot / (np * nq), -1.0, 1.0);
  return std::acos(c);
}

Quaternion pow_int(Quaternion q, unsigned n) {
  Quaternion result = Quaternion::real(1.0);
  while (n > 0) {
    if (n & 1u) result = mul(result, q);
    n >>= 1u;
    if (n > 0) q = mul(q, q);
  }
  return result;
}

UnitImaginary UnitImaginary::from_components(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 1e-300)) {
    throw std::domain_error("UnitImaginary: zero direction");
  }
  return UnitImaginary{Quaternion{0.0, x / n, y / n, z / n}};
}

AngleFrame::AngleFrame(const Quaternion& b_, double halfAperture_)
    : b(b_), halfAperture(halfAperture_) {
  if (norm(b) == 0.0) {
    throw std::domain_error("AngleFrame: reference b must be nonzero");
  }
  constexpr double kHalfPi = 1.5707963267948966;
  if (!(halfAperture >= 0.0 && halfAperture <= kHalfPi + 1e-12)) {
    throw std::domain_error("AngleFrame: half-aperture must lie in [0, pi/2]");
  }
}

Quaternion sample_unit(std::mt19937_64& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const Quaternion g{gauss(eng), gauss(eng), gauss(eng), gauss(eng)};
    const double n = norm(g);
    if (n > 1e-12) return g * (1.0 / n);
  }
}

UnitImaginary sample_unit_imaginary(std::mt19937_64& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const double x = gauss(eng), y = gauss(eng), z = gauss(eng);
    if (std::sqrt(x * x + y * y + z * z) > 1e-12) {
      return UnitImaginary::from_components(x, y, z);
    }
  }
}

}  // namespace qek
