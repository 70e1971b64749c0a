#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qek/qpoly.hpp"
#include "qek/quaternion.hpp"

namespace qek {

/// A root of a real polynomial, represented in the closed upper half plane:
/// x + iy with y >= 0. For y > 0 the pair (x, y, m) stands for the
/// conjugate pair x +- iy, each with multiplicity m, so it accounts for 2m
/// roots; a real root (y == 0) accounts for m.
struct ComplexRootPair {
  double x = 0.0;
  double y = 0.0;
  int multiplicity = 1;
};

/// An isolated zero q with its multiplicity and relative residual.
struct PointZero {
  Quaternion q;
  int multiplicity = 1;
  double residual = 0.0;
};

/// A whole 2-sphere of zeros x + y*S (S the unit purely imaginary sphere).
/// Counts 2 * multiplicity in the degree accounting.
struct SphericalZero {
  double x = 0.0;
  double y = 0.0;
  int multiplicity = 1;
};

using Zero = std::variant<PointZero, SphericalZero>;

/// Complete zero description of a quaternionic polynomial.
struct ZeroSet {
  std::vector<Zero> zeros;
  double toleranceUsed = 0.0;
  /// sum of point multiplicities + 2 * sum of sphere multiplicities.
  int totalMultiplicity = 0;
  /// Non-empty when something could not be resolved cleanly (a persistent
  /// spurious candidate, an odd conjugate cluster, a residual above
  /// tolerance). Never silently dropped.
  std::vector<std::string> flags;

  double maxModulus() const;
};

/// All complex roots of rp via eigenvalues of the balanced companion
/// matrix, Newton-refined and clustered into upper-half-plane
/// representatives with multiplicities. Roots within 1e-6 * (1 + |root|)
/// of each other merge into one cluster; clusters of multiplicity m are
/// re-polished on the (m-1)-th derivative, where the multiple root is
/// simple. Requires degree >= 1 (std::domain_error otherwise).
std::vector<ComplexRootPair> real_roots_complex(const RealPolynomial& rp);

/// Classifies a candidate root pair (x, y), y > 0, of normal_poly(p).
///
/// Writes (x+iy)^{n_v} = alpha_v + i beta_v over C and forms
/// A = sum alpha_v a_{n_v}, B = sum beta_v a_{n_v}; p(x + Iy) = A + I*B for
/// every imaginary unit I. Both |A|, |B| <= tol*scale means p vanishes on
/// the whole sphere; otherwise the unique candidate direction is
/// I = -A * B^{-1}, accepted when it is a unit imaginary within tol.
/// Returns std::nullopt for a spurious pair (a numerical artifact of the
/// normal polynomial, e.g. B ~ 0 with A large). Multiplicity in the result
/// is left at 1; find_zeros assigns the cluster multiplicity.
std::optional<Zero> classify(const SparseQPolynomial& p, double x, double y,
                             double tol);

/// Full pipeline: normal_poly -> real_roots_complex -> classify.
/// Spurious candidates are retried once after re-polishing; persistent
/// failures end up in ZeroSet::flags. Requires degree >= 1.
ZeroSet find_zeros(const SparseQPolynomial& p, double tol = 1e-9);

/// Relative backward-style residual
/// |p(q)| / (sum|a_{n_v}| * max(1,|q|)^n). Scale-invariant under right
/// scaling of p by a positive real.
double residual(const SparseQPolynomial& p, const Quaternion& q);

/// Modulus of a zero: |q| for a point, sqrt(x^2+y^2) for a sphere (every
/// point of the sphere has that modulus).
double zero_modulus(const Zero& zv);

}  // namespace qek
