#pragma once

#include <complex>
#include <vector>

#include "qek/quaternion.hpp"

namespace qek {

/// One term q^exp * coeff of a right-coefficient polynomial.
struct Term {
  int exp = 0;
  Quaternion coeff;
};

/// Sparse lacunary polynomial sum_v q^{n_v} a_{n_v} with the powers of the
/// indeterminate on the left and quaternion coefficients on the right.
///
/// Invariants: exponents nonnegative and strictly increasing, every stored
/// coefficient nonzero. The empty polynomial is the zero polynomial and has
/// degree() == -1.
class SparseQPolynomial {
 public:
  SparseQPolynomial() = default;

  /// Validates exponents (nonnegative, strictly increasing) and drops
  /// exact-zero coefficients. Throws std::invalid_argument on bad input.
  explicit SparseQPolynomial(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.back().exp; }
  int support_size() const { return static_cast<int>(terms_.size()); }

  const Quaternion& leading() const;

  /// True when every exponent 0..degree is present.
  bool dense() const;

  /// sum |a_{n_v}| over the stored coefficients.
  double coeff_norm_sum() const;

 private:
  std::vector<Term> terms_;
};

/// Dense real-coefficient polynomial, index = exponent. Carrier for the
/// normal polynomial, whose coefficients are provably real.
class RealPolynomial {
 public:
  RealPolynomial() = default;

  /// Trims trailing zero coefficients.
  explicit RealPolynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }

  double eval(double t) const;
  std::complex<double> eval(std::complex<double> zv) const;
  RealPolynomial derivative() const;

 private:
  std::vector<double> c_;
};

/// p(q) = sum q^{n_v} a_{n_v}, products taken in that order. Uses one
/// running power accumulator advanced across the gaps, O(n) Hamilton
/// products; Horner is avoided because right-hand coefficients make it
/// order-sensitive.
Quaternion evaluate(const SparseQPolynomial& p, const Quaternion& q);

/// Regular product: coefficient convolution c_v = sum_u a_u b_{v-u} with
/// the left factor's coefficients multiplied on the left. Degrees add; the
/// product is not commutative. Convolution terms with
/// |c_v| <= 1e-15 * (sum|a|)(sum|b|) are dropped to restore sparsity
/// (exact cancellations would otherwise pollute the support); the leading
/// term is always kept.
SparseQPolynomial star_product(const SparseQPolynomial& f,
                               const SparseQPolynomial& g);

/// Termwise coefficient conjugation.
SparseQPolynomial conjugate_poly(const SparseQPolynomial& p);

/// Normal polynomial N(p) = p ⋆ conjugate_poly(p), degree 2n with real
/// coefficients: in the convolution c_v = sum a_u * conj(a_{v-u}) the terms
/// pair u <-> v-u into 2*Re contributions, so the imaginary parts cancel.
/// Asserts the imaginary residue is <= 1e-12 * (sum|a|)^2 and discards it;
/// throws NumericalError otherwise. Requires degree(p) >= 1.
RealPolynomial normal_poly(const SparseQPolynomial& p);

/// xi(q) = p(q) ⋆ (1 - q). Its zero set is the zeros of p together with
/// q = 1.
SparseQPolynomial build_xi(const SparseQPolynomial& p);

/// p with every coefficient multiplied on the right by the real s.
SparseQPolynomial scaled(const SparseQPolynomial& p, double s);

}  // namespace qek
