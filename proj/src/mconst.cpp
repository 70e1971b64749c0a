#include "qek/mconst.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qek/errors.hpp"

namespace qek {

namespace {

double gap_quotient(const Quaternion& q, const Quaternion& a_j,
                    const Quaternion& a_prev, int n_j, int n_prev,
                    double denom) {
  const Quaternion num =
      mul(pow_int(q, static_cast<unsigned>(n_j)), a_j) -
      mul(pow_int(q, static_cast<unsigned>(n_prev + 1)), a_prev);
  return norm(num) / denom;
}

// cos t + u sin t for a unit imaginary direction u.
Quaternion slice_point(double t, const Quaternion& u) {
  return Quaternion::real(std::cos(t)) + u * std::sin(t);
}

struct SliceDecomp {
  double t = 0.0;
  Quaternion u;  // unit imaginary
};

SliceDecomp decompose(const Quaternion& q) {
  const double im = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  SliceDecomp d;
  d.t = std::atan2(im, q.w);
  if (im > 1e-300) {
    d.u = Quaternion{0.0, q.x / im, q.y / im, q.z / im};
  } else {
    d.u = Quaternion::unit_i();  // real q: any slice direction works
  }
  return d;
}

// Golden-section maximization of f over [lo, hi]; assumes local
// unimodality near the best sample. Stops at interval width `tol`.
template <typename F>
double golden_max(F f, double lo, double hi, double tol, double* best_t) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  *best_t = 0.5 * (a + b);
  return std::max(f1, f2);
}

void check_distinct(const Quaternion& a_j, const Quaternion& a_prev,
                    const char* who) {
  if (norm_sq(a_j - a_prev) == 0.0) {
    throw std::domain_error(std::string(who) +
                            ": adjacent coefficients must be distinct");
  }
}

}  // namespace

double m_closed_form(const Quaternion& a_j, const Quaternion& a_prev, int d) {
  check_distinct(a_j, a_prev, "m_closed_form");
  if (d < 0) throw std::invalid_argument("m_closed_form: negative gap");
  if (d == 0) return 1.0;
  return std::max(1.0, (norm(a_j) + norm(a_prev)) / norm(a_j - a_prev));
}

double m_sampled(const Quaternion& a_j, const Quaternion& a_prev, int n_j,
                 int n_prev, int samples, std::uint64_t seed) {
  check_distinct(a_j, a_prev, "m_sampled");
  if (samples < 1000) {
    throw std::invalid_argument("m_sampled: need at least 1000 samples");
  }
  if (n_prev < 0 || n_j <= n_prev) {
    throw std::invalid_argument("m_sampled: need 0 <= n_prev < n_j");
  }
  const double denom = norm(a_j - a_prev);
  auto f = [&](const Quaternion& q) {
    return gap_quotient(q, a_j, a_prev, n_j, n_prev, denom);
  };

  std::mt19937_64 eng(seed);
  // q = 1 anchor: numerator is |a_j - a_prev| exactly, so the value is 1.
  Quaternion best_q = Quaternion::real(1.0);
  double best = f(best_q);
  for (int s = 0; s < samples; ++s) {
    const Quaternion q = sample_unit(eng);
    const double v = f(q);
    if (v > best) {
      best = v;
      best_q = q;
    }
  }

  // Local refinement. Golden-section over the slice angle with the best
  // direction fixed; then shrink a sampling cone around u and repeat with
  // a narrower window. Evaluation-only, so the result stays a lower bound.
  SliceDecomp d = decompose(best_q);
  auto slice_f = [&](double t) { return f(slice_point(t, d.u)); };
  double t_best = d.t;
  double refined = golden_max(slice_f, d.t - 0.5, d.t + 0.5, 1e-5, &t_best);
  if (refined > best) best = refined;

  double cone = 0.3;
  for (int round = 0; round < 5; ++round) {
    for (int probe = 0; probe < 12; ++probe) {
      const UnitImaginary g = sample_unit_imaginary(eng);
      const Quaternion cand = d.u + g.u * cone;
      const double im = norm(cand);
      if (im < 1e-12) continue;
      const Quaternion u2 = cand * (1.0 / im);
      auto slice2 = [&](double t) { return f(slice_point(t, u2)); };
      double t2 = t_best;
      const double v = golden_max(slice2, t_best - 0.2, t_best + 0.2, 1e-5, &t2);
      if (v > best) {
        best = v;
        d.u = u2;
        t_best = t2;
      }
    }
    cone *= 0.5;
  }
  return std::max(best, 1.0);
}

MReport m_overall(const SparseQPolynomial& p, MMethod method, int samples,
                  std::uint64_t seed) {
  const auto& terms = p.terms();
  MReport report;
  report.method = method == MMethod::ClosedForm ? "closed-form" : "sampled";
  double overall = 1.0;
  for (size_t j = 1; j < terms.size(); ++j) {
    const Term& prev = terms[j - 1];
    const Term& cur = terms[j];
    if (norm_sq(cur.coeff - prev.coeff) == 0.0) {
      throw HypothesisViolation(
          "m_overall: adjacent coefficients equal at j=" + std::to_string(j));
    }
    const int d = cur.exp - prev.exp - 1;
    double value;
    if (method == MMethod::ClosedForm) {
      value = m_closed_form(cur.coeff, prev.coeff, d);
    } else {
      value = m_sampled(cur.coeff, prev.coeff, cur.exp, prev.exp, samples,
                        seed + j);
    }
    report.perGap.push_back({static_cast<int>(j), d, value});
    overall = std::max(overall, value);
  }
  report.overall = overall;
  return report;
}

}  // namespace qek
