#pragma once

#include <random>
#include <vector>

#include "qek/qpoly.hpp"
#include "qek/quaternion.hpp"

namespace qek::test {

inline SparseQPolynomial poly(std::vector<Term> terms) {
  return SparseQPolynomial(std::move(terms));
}

/// Dense real-coefficient polynomial given coefficients by exponent.
inline SparseQPolynomial real_poly(const std::vector<double>& coeffs) {
  std::vector<Term> terms;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    terms.push_back({static_cast<int>(i), Quaternion::real(coeffs[i])});
  }
  return SparseQPolynomial(std::move(terms));
}

inline Quaternion random_quaternion(std::mt19937_64& eng, double span = 1.0) {
  std::uniform_real_distribution<double> u(-span, span);
  return {u(eng), u(eng), u(eng), u(eng)};
}

/// Dense polynomial of the given degree with random quaternion
/// coefficients, leading coefficient kept well away from zero.
inline SparseQPolynomial random_poly(std::mt19937_64& eng, int degree) {
  std::vector<Term> terms;
  for (int v = 0; v <= degree; ++v) {
    Quaternion c = random_quaternion(eng);
    if (v == degree) {
      while (norm(c) < 0.2) c = random_quaternion(eng);
    }
    if (norm_sq(c) != 0.0 || v == degree) terms.push_back({v, c});
  }
  return SparseQPolynomial(std::move(terms));
}

/// Monic dense polynomial with random quaternion coefficients.
inline SparseQPolynomial random_monic(std::mt19937_64& eng, int degree) {
  std::vector<Term> terms;
  for (int v = 0; v < degree; ++v) {
    const Quaternion c = random_quaternion(eng);
    if (norm_sq(c) != 0.0) terms.push_back({v, c});
  }
  terms.push_back({degree, Quaternion::real(1.0)});
  return SparseQPolynomial(std::move(terms));
}

}  // namespace qek::test
