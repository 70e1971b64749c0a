#include "qek/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "qek/errors.hpp"

namespace qek {

SparseQPolynomial::SparseQPolynomial(std::vector<Term> terms) {
  int prev = -1;
  for (const Term& t : terms) {
    if (t.exp < 0) {
      throw std::invalid_argument("polynomial: negative exponent " +
                                  std::to_string(t.exp));
    }
    if (t.exp <= prev) {
      throw std::invalid_argument(
          "polynomial: exponents must be strictly increasing (offender " +
          std::to_string(t.exp) + ")");
    }
    if (!is_finite(t.coeff)) {
      throw std::invalid_argument("polynomial: non-finite coefficient");
    }
    prev = t.exp;
    if (norm_sq(t.coeff) != 0.0) terms_.push_back(t);
  }
}

const Quaternion& SparseQPolynomial::leading() const {
  if (terms_.empty()) {
    throw std::domain_error("leading: zero polynomial");
  }
  return terms_.back().coeff;
}

bool SparseQPolynomial::dense() const {
  if (terms_.empty()) return false;
  return terms_.front().exp == 0 &&
         static_cast<int>(terms_.size()) == degree() + 1;
}

double SparseQPolynomial::coeff_norm_sum() const {
  double s = 0.0;
  for (const Term& t : terms_) s += norm(t.coeff);
  return s;
}

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double RealPolynomial::eval(double t) const {
  double acc = 0.0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

std::complex<double> RealPolynomial::eval(std::complex<double> zv) const {
  std::complex<double> acc = 0.0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * zv + c_[i];
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (c_.size() <= 1) return RealPolynomial{};
  std::vector<double> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * c_[i];
  }
  return RealPolynomial(std::move(d));
}

Quaternion evaluate(const SparseQPolynomial& p, const Quaternion& q) {
  Quaternion acc{};
  Quaternion power = Quaternion::real(1.0);
  int current = 0;
  for (const Term& t : p.terms()) {
    for (; current < t.exp; ++current) power = mul(power, q);
    acc = acc + mul(power, t.coeff);
  }
  return acc;
}

SparseQPolynomial star_product(const SparseQPolynomial& f,
                               const SparseQPolynomial& g) {
  if (f.empty() || g.empty()) return SparseQPolynomial{};
  std::map<int, Quaternion> conv;
  for (const Term& a : f.terms()) {
    for (const Term& b : g.terms()) {
      Quaternion& slot = conv[a.exp + b.exp];
      slot = slot + mul(a.coeff, b.coeff);
    }
  }
  const double threshold = 1e-15 * f.coeff_norm_sum() * g.coeff_norm_sum();
  const int lead_exp = f.degree() + g.degree();
  std::vector<Term> out;
  out.reserve(conv.size());
  for (const auto& [exp, c] : conv) {
    // The leading coefficient is a product of two nonzero quaternions and
    // cannot cancel; keep it unconditionally.
    if (exp == lead_exp || norm(c) > threshold) out.push_back({exp, c});
  }
  return SparseQPolynomial(std::move(out));
}

SparseQPolynomial conjugate_poly(const SparseQPolynomial& p) {
  std::vector<Term> out = p.terms();
  for (Term& t : out) t.coeff = conjugate(t.coeff);
  return SparseQPolynomial(std::move(out));
}

RealPolynomial normal_poly(const SparseQPolynomial& p) {
  if (p.degree() < 1) {
    throw std::domain_error("normal_poly: degree must be >= 1");
  }
  const SparseQPolynomial n = star_product(p, conjugate_poly(p));
  const double s = p.coeff_norm_sum();
  const double residue_cap = 1e-12 * s * s;
  std::vector<double> dense(static_cast<size_t>(n.degree()) + 1, 0.0);
  for (const Term& t : n.terms()) {
    const double im =
        std::sqrt(t.coeff.x * t.coeff.x + t.coeff.y * t.coeff.y +
                  t.coeff.z * t.coeff.z);
    if (im > residue_cap) {
      throw NumericalError(
          "normal_poly: imaginary residue " + std::to_string(im) +
          " exceeds threshold at exponent " + std::to_string(t.exp));
    }
    dense[static_cast<size_t>(t.exp)] = t.coeff.w;
  }
  return RealPolynomial(std::move(dense));
}

SparseQPolynomial build_xi(const SparseQPolynomial& p) {
  const SparseQPolynomial one_minus_q(
      {{0, Quaternion::real(1.0)}, {1, Quaternion::real(-1.0)}});
  return star_product(p, one_minus_q);
}

SparseQPolynomial scaled(const SparseQPolynomial& p, double s) {
  std::vector<Term> out = p.terms();
  for (Term& t : out) t.coeff = t.coeff * s;
  return SparseQPolynomial(std::move(out));
}

}  // namespace qek
