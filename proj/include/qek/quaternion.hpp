#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace qek {

/// A quaternion w + x*i + y*j + z*k with double components.
///
/// Values are immutable in spirit: every operation below is pure and returns
/// a new value, so concurrent use needs no synchronization.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  /// Embeds a real number as a quaternion.
  static constexpr Quaternion real(double r) { return {r, 0.0, 0.0, 0.0}; }

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  /// Componentwise scaling by a real. Reals are central in H, so left and
  /// right scalar multiplication agree.
  constexpr Quaternion operator*(double s) const {
    return {w * s, x * s, y * s, z * s};
  }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

/// Hamilton product. Non-commutative: i*j = k but j*i = -k.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return mul(p, q);
}

constexpr Quaternion conjugate(const Quaternion& q) {
  return {q.w, -q.x, -q.y, -q.z};
}

constexpr double norm_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) &&
         std::isfinite(q.z);
}

/// q^{-1} = conjugate(q) / |q|^2. Throws std::domain_error on zero input.
///
/// Note the conjugate: |q|^{-2} q alone is not an inverse for non-real q
/// (i * (|i|^{-2} i) = -1).
Quaternion inverse(const Quaternion& q);

/// Angle between p and q as vectors in R^4:
/// arccos(Re(p * conjugate(q)) / (|p| |q|)) in [0, pi].
/// Re(p q̄) is exactly the Euclidean 4-dot product.
double angle_between(const Quaternion& p, const Quaternion& q);

/// q^n for n >= 0 by repeated Hamilton products (square-and-multiply).
/// pow_int(q, 0) == 1 for every q, including 0.
Quaternion pow_int(Quaternion q, unsigned n);

/// A purely imaginary unit quaternion, i.e. an element of the sphere
/// { x1 i + x2 j + x3 k : x1^2 + x2^2 + x3^2 = 1 }.
struct UnitImaginary {
  Quaternion u;  // Re(u) == 0 exactly, |u| == 1 within 1e-12

  /// Normalizes (x, y, z); throws std::domain_error on a near-zero vector.
  static UnitImaginary from_components(double x, double y, double z);
};

/// A reference direction b with a half-aperture angle in [0, pi/2],
/// describing the cone of admissible coefficient directions.
struct AngleFrame {
  Quaternion b;
  double halfAperture = 0.0;

  AngleFrame(const Quaternion& b_, double halfAperture_);
};

/// Uniform point on the unit 3-sphere of H: four independent standard
/// normals, normalized. Deterministic for a fixed engine state.
Quaternion sample_unit(std::mt19937_64& eng);

/// Uniform point on the unit sphere of purely imaginary quaternions.
UnitImaginary sample_unit_imaginary(std::mt19937_64& eng);

/// Seeded stream of uniform unit-sphere samples. Streams are per-caller
/// state; do not share one across threads without external coordination.
class SphereSampler {
 public:
  explicit SphereSampler(std::uint64_t seed) : eng_(seed) {}

  Quaternion next() { return sample_unit(eng_); }
  UnitImaginary next_imaginary() { return sample_unit_imaginary(eng_); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qek
