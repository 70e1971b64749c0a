#include "qek/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qek {

namespace {

// Comparison slack absorbing parse rounding; inequalities are non-strict.
constexpr double kSlack = 1e-12;
constexpr double kHalfPi = 1.5707963267948966;
constexpr double kPi() { return 3.14159265358979323846; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

void require_nonempty(const SparseQPolynomial& p, HypothesisReport& h) {
  if (p.degree() < 1) {
    h.violations.push_back({"degree >= 1", -1, "polynomial has degree < 1"});
  }
}

void require_two_terms(const SparseQPolynomial& p, HypothesisReport& h) {
  require_nonempty(p, h);
  if (p.support_size() < 2) {
    h.violations.push_back(
        {"support size >= 2", -1, "need at least two terms"});
  }
}

void require_dense(const SparseQPolynomial& p, HypothesisReport& h) {
  if (!p.dense()) {
    h.violations.push_back({"dense support", -1,
                            "every exponent 0..n must be present"});
  }
}

void require_adjacent_distinct(const SparseQPolynomial& p,
                               HypothesisReport& h) {
  const auto& t = p.terms();
  for (size_t j = 1; j < t.size(); ++j) {
    if (norm(t[j].coeff - t[j - 1].coeff) <= kSlack) {
      h.violations.push_back({"adjacent coefficients distinct",
                              static_cast<int>(j),
                              "a_{n_j} equals a_{n_j-1} at j=" +
                                  std::to_string(j)});
    }
  }
}

bool is_real_coeff(const Quaternion& a) {
  return std::abs(a.x) <= kSlack && std::abs(a.y) <= kSlack &&
         std::abs(a.z) <= kSlack;
}

bool is_complex_coeff(const Quaternion& a) {
  return std::abs(a.y) <= kSlack && std::abs(a.z) <= kSlack;
}

double max_adjacent_half_angle(const SparseQPolynomial& p) {
  const auto& t = p.terms();
  double m = 0.0;
  for (size_t j = 1; j < t.size(); ++j) {
    m = std::max(m, 0.5 * angle_between(t[j].coeff, t[j - 1].coeff));
  }
  return m;
}

// angle(p, q) <= limit, compared in cosine space where the check is
// well-conditioned near angle 0 (acos amplifies rounding to ~sqrt(eps)
// there, which no absolute angle slack can absorb).
bool angle_within(const Quaternion& p, const Quaternion& q, double limit) {
  const double dot = p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
  return dot >= norm(p) * norm(q) * std::cos(std::min(limit, kPi())) - kSlack;
}

BoundReport make_report(std::string id, HypothesisReport h) {
  h.theoremId = id;
  h.satisfied = h.violations.empty();
  BoundReport r;
  r.theoremId = std::move(id);
  r.hypothesis = std::move(h);
  return r;
}

}  // namespace

ComponentView ComponentView::of(const SparseQPolynomial& p) {
  ComponentView v;
  for (const Term& t : p.terms()) {
    v.alpha.push_back(t.coeff.w);
    v.beta.push_back(t.coeff.x);
    v.gamma.push_back(t.coeff.y);
    v.delta.push_back(t.coeff.z);
  }
  return v;
}

double chord_bound(const Quaternion& q1, const Quaternion& q2, double theta) {
  const double n1 = norm(q1);
  const double n2 = norm(q2);
  if (n1 == 0.0 || n2 == 0.0) {
    throw std::domain_error("chord_bound: arguments must be nonzero");
  }
  if (n1 > n2 + kSlack) {
    throw std::domain_error("chord_bound: requires |q1| <= |q2|");
  }
  if (!(theta <= kHalfPi + kSlack)) {
    throw std::domain_error("chord_bound: requires theta <= pi/2");
  }
  if (angle_between(q1, q2) > 2.0 * theta + kSlack) {
    throw std::domain_error(
        "chord_bound: requires angle(q1,q2) <= 2*theta");
  }
  return (n2 - n1) * std::cos(theta) + (n1 + n2) * std::sin(theta);
}

BoundReport check_ek(const SparseQPolynomial& p) {
  HypothesisReport h;
  require_nonempty(p, h);
  require_dense(p, h);
  const auto& t = p.terms();
  for (size_t v = 0; v < t.size(); ++v) {
    if (!is_real_coeff(t[v].coeff)) {
      h.violations.push_back({"real coefficients", static_cast<int>(v),
                              "coefficient has imaginary part"});
    }
  }
  if (!t.empty() && t.front().coeff.w <= -kSlack) {
    h.violations.push_back({"0 < a_0", 0, "a_0 = " + fmt(t.front().coeff.w)});
  }
  for (size_t v = 1; v < t.size(); ++v) {
    if (t[v].coeff.w < t[v - 1].coeff.w - kSlack) {
      h.violations.push_back({"coefficients nondecreasing",
                              static_cast<int>(v),
                              fmt(t[v].coeff.w) + " < " +
                                  fmt(t[v - 1].coeff.w)});
    }
  }
  BoundReport r = make_report("ek", std::move(h));
  if (r.hypothesis.satisfied) r.radius = 1.0;
  return r;
}

BoundReport bound_q2(const SparseQPolynomial& p, const AngleFrame& frame) {
  HypothesisReport h;
  require_nonempty(p, h);
  require_dense(p, h);
  const auto& t = p.terms();
  const double theta = frame.halfAperture;
  for (size_t v = 1; v < t.size(); ++v) {
    if (norm(t[v].coeff) < norm(t[v - 1].coeff) - kSlack) {
      h.violations.push_back({"moduli nondecreasing", static_cast<int>(v),
                              fmt(norm(t[v].coeff)) + " < " +
                                  fmt(norm(t[v - 1].coeff))});
    }
  }
  for (size_t v = 0; v < t.size(); ++v) {
    if (!angle_within(t[v].coeff, frame.b, theta)) {
      h.violations.push_back({"angle(a_v, b) <= theta", static_cast<int>(v),
                              "angle " + fmt(angle_between(t[v].coeff, frame.b)) +
                                  " > " + fmt(theta)});
    }
  }
  BoundReport r = make_report("q2", std::move(h));
  r.params["theta"] = theta;
  if (r.hypothesis.satisfied) {
    double lower_sum = 0.0;
    for (size_t v = 0; v + 1 < t.size(); ++v) lower_sum += norm(t[v].coeff);
    r.radius = std::cos(theta) + std::sin(theta) +
               2.0 * std::sin(theta) / norm(p.leading()) * lower_sum;
  }
  return r;
}

BoundReport bound_q3(const SparseQPolynomial& p) {
  HypothesisReport h;
  require_nonempty(p, h);
  require_dense(p, h);
  const auto& t = p.terms();
  // The monotone chain starts at index 1; alpha_0 is unconstrained.
  for (size_t v = 1; v < t.size(); ++v) {
    if (t[v].coeff.w < -kSlack) {
      h.violations.push_back({"alpha_v >= 0 for v >= 1", static_cast<int>(v),
                              "alpha = " + fmt(t[v].coeff.w)});
    }
    if (v >= 2 && t[v].coeff.w < t[v - 1].coeff.w - kSlack) {
      h.violations.push_back({"alpha nondecreasing from index 1",
                              static_cast<int>(v),
                              fmt(t[v].coeff.w) + " < " +
                                  fmt(t[v - 1].coeff.w)});
    }
  }
  if (!t.empty() && std::abs(t.back().coeff.w) <= kSlack) {
    h.violations.push_back({"alpha_n != 0", static_cast<int>(t.size()) - 1,
                            "leading real part vanishes"});
  }
  BoundReport r = make_report("q3", std::move(h));
  if (r.hypothesis.satisfied) {
    double total = 0.0;
    for (const Term& term : t) total += norm(term.coeff);
    r.radius = 1.0 + 2.0 / t.back().coeff.w * total;  // sum includes v = n
  }
  return r;
}

BoundReport bound_t1(const SparseQPolynomial& p, const BoundParams& params) {
  HypothesisReport h;
  require_two_terms(p, h);
  const auto& t = p.terms();
  const double alpha =
      params.alpha ? *params.alpha
                   : (t.size() >= 2 ? max_adjacent_half_angle(p) : 0.0);
  if (!(alpha >= 0.0 && alpha <= kHalfPi + kSlack)) {
    h.violations.push_back({"0 <= alpha <= pi/2", -1, "alpha = " + fmt(alpha)});
  }
  if (!t.empty() && norm(t.front().coeff) <= kSlack) {
    h.violations.push_back({"0 < |a_{n_0}|", 0, "first modulus vanishes"});
  }
  for (size_t j = 1; j < t.size(); ++j) {
    if (norm(t[j].coeff) < norm(t[j - 1].coeff) - kSlack) {
      h.violations.push_back({"moduli nondecreasing", static_cast<int>(j),
                              fmt(norm(t[j].coeff)) + " < " +
                                  fmt(norm(t[j - 1].coeff))});
    }
  }
  require_adjacent_distinct(p, h);
  for (size_t j = 1; j < t.size(); ++j) {
    if (!angle_within(t[j].coeff, t[j - 1].coeff, 2.0 * alpha)) {
      h.violations.push_back(
          {"angle(a_{n_j}, a_{n_j-1}) <= 2*alpha", static_cast<int>(j),
           "angle " + fmt(angle_between(t[j].coeff, t[j - 1].coeff)) + " > " +
               fmt(2.0 * alpha)});
    }
  }
  BoundReport r = make_report("t1", std::move(h));
  r.params["alpha"] = alpha;
  if (params.beta) r.params["beta"] = *params.beta;
  if (r.hypothesis.satisfied) {
    const MReport m = m_overall(p);
    double lower_sum = 0.0;
    for (size_t j = 0; j + 1 < t.size(); ++j) lower_sum += norm(t[j].coeff);
    const double lead = norm(p.leading());
    const double trig = std::cos(alpha) + std::sin(alpha);
    r.radius = m.overall * (trig + 2.0 * lower_sum * std::sin(alpha) / lead);
    r.params["M"] = m.overall;
    r.params["literalRadius"] =
        m.overall * (lead * trig + 2.0 * lower_sum * std::sin(alpha));
    r.erratumApplied = true;
  }
  return r;
}

BoundReport bound_t2(const SparseQPolynomial& p, const BoundParams& params) {
  HypothesisReport h;
  require_two_terms(p, h);
  require_adjacent_distinct(p, h);
  const ComponentView c = ComponentView::of(p);
  const int k = static_cast<int>(c.alpha.size()) - 1;
  for (int l = 1; l <= k; ++l) {
    if (c.alpha[l] < c.alpha[l - 1] - kSlack) {
      h.violations.push_back({"alpha components nondecreasing", l,
                              fmt(c.alpha[l]) + " < " + fmt(c.alpha[l - 1])});
    }
    if (c.beta[l] > c.beta[l - 1] + kSlack) {
      h.violations.push_back({"beta components nonincreasing", l,
                              fmt(c.beta[l]) + " > " + fmt(c.beta[l - 1])});
    }
  }
  int peak = -1;
  if (k >= 0) {
    if (params.peak_r) {
      peak = *params.peak_r;
      if (peak < 0 || peak > k) {
        h.violations.push_back({"0 <= r <= k", peak, "peak index out of range"});
        peak = -1;
      }
    } else {
      // smallest index attaining the maximum; the bracket term 2*gamma_r is
      // maximal at any maximizer, so ties do not change the radius
      peak = static_cast<int>(
          std::max_element(c.gamma.begin(), c.gamma.end()) - c.gamma.begin());
    }
  }
  if (peak >= 0) {
    for (int l = 1; l <= peak; ++l) {
      if (c.gamma[l] < c.gamma[l - 1] - kSlack) {
        h.violations.push_back({"gamma nondecreasing up to the peak", l,
                                fmt(c.gamma[l]) + " < " + fmt(c.gamma[l - 1])});
      }
    }
    for (int l = peak + 1; l <= k; ++l) {
      if (c.gamma[l] > c.gamma[l - 1] + kSlack) {
        h.violations.push_back({"gamma nonincreasing after the peak", l,
                                fmt(c.gamma[l]) + " > " + fmt(c.gamma[l - 1])});
      }
    }
  }
  BoundReport r = make_report("t2", std::move(h));
  if (peak >= 0) r.params["r"] = peak;
  if (r.hypothesis.satisfied) {
    double delta_lower = 0.0;
    for (int j = 0; j < k; ++j) delta_lower += std::abs(c.delta[j]);
    const double bracket = (c.alpha[k] - c.alpha[0]) + (c.beta[0] - c.beta[k]) +
                           2.0 * c.gamma[peak] - (c.gamma[0] + c.gamma[k]) +
                           2.0 * delta_lower + std::abs(c.delta[k]) +
                           std::abs(c.alpha[0]) + std::abs(c.beta[0]) +
                           std::abs(c.gamma[0]);
    const MReport m = m_overall(p);
    r.radius = m.overall / norm(p.leading()) * bracket;
    r.params["M"] = m.overall;
  }
  return r;
}

namespace {

// Shared scaffolding for the two complex-coefficient corollaries and the
// real one: validates the coefficient shape, then applies `bracket`.
template <typename BracketFn>
BoundReport complex_corollary(const SparseQPolynomial& p, const char* id,
                              bool require_real, bool beta_monotone,
                              BracketFn bracket) {
  HypothesisReport h;
  require_two_terms(p, h);
  require_adjacent_distinct(p, h);
  const auto& t = p.terms();
  for (size_t l = 0; l < t.size(); ++l) {
    if (require_real ? !is_real_coeff(t[l].coeff)
                     : !is_complex_coeff(t[l].coeff)) {
      h.violations.push_back(
          {require_real ? "real coefficients" : "coefficients of form a+bi",
           static_cast<int>(l), "j/k component present"});
    }
  }
  const ComponentView c = ComponentView::of(p);
  const int k = static_cast<int>(c.alpha.size()) - 1;
  for (int l = 1; l <= k; ++l) {
    if (c.alpha[l] < c.alpha[l - 1] - kSlack) {
      h.violations.push_back({"alpha components nondecreasing", l,
                              fmt(c.alpha[l]) + " < " + fmt(c.alpha[l - 1])});
    }
    if (beta_monotone && c.beta[l] > c.beta[l - 1] + kSlack) {
      h.violations.push_back({"beta components nonincreasing", l,
                              fmt(c.beta[l]) + " > " + fmt(c.beta[l - 1])});
    }
  }
  BoundReport r = make_report(id, std::move(h));
  if (r.hypothesis.satisfied) {
    const MReport m = m_overall(p);
    r.radius = m.overall / norm(p.leading()) * bracket(c, k);
    r.params["M"] = m.overall;
  }
  return r;
}

}  // namespace

BoundReport bound_co1(const SparseQPolynomial& p) {
  return complex_corollary(
      p, "co1", /*require_real=*/false, /*beta_monotone=*/true,
      [](const ComponentView& c, int k) {
        return (c.alpha[k] - c.alpha[0] + std::abs(c.alpha[0])) +
               (c.beta[0] - c.beta[k] + std::abs(c.beta[0]));
      });
}

BoundReport bound_co2(const SparseQPolynomial& p) {
  return complex_corollary(
      p, "co2", /*require_real=*/false, /*beta_monotone=*/false,
      [](const ComponentView& c, int k) {
        double beta_lower = 0.0;
        for (int j = 0; j < k; ++j) beta_lower += std::abs(c.beta[j]);
        return (c.alpha[k] - c.alpha[0] + std::abs(c.alpha[0])) +
               2.0 * beta_lower + std::abs(c.beta[k]);
      });
}

BoundReport bound_cor3(const SparseQPolynomial& p) {
  return complex_corollary(
      p, "cor3", /*require_real=*/true, /*beta_monotone=*/false,
      [](const ComponentView& c, int k) {
        return c.alpha[k] - c.alpha[0] + std::abs(c.alpha[0]);
      });
}

double cauchy_bound(const SparseQPolynomial& p) {
  if (p.degree() < 1) {
    throw std::domain_error("cauchy_bound: degree must be >= 1");
  }
  const double lead = norm(p.leading());
  double worst = 0.0;
  const auto& t = p.terms();
  for (size_t v = 0; v + 1 < t.size(); ++v) {
    worst = std::max(worst, norm(t[v].coeff));
  }
  return 1.0 + worst / lead;
}

std::vector<BoundReport> auto_select(const SparseQPolynomial& p,
                                     const BoundParams& params) {
  std::vector<BoundReport> all;
  all.push_back(check_ek(p));
  {
    const Quaternion b = params.b ? *params.b
                                  : (p.empty() ? Quaternion::real(1.0)
                                               : p.leading());
    double theta = 0.0;
    if (params.theta) {
      theta = *params.theta;
    } else {
      for (const Term& t : p.terms()) {
        theta = std::max(theta, angle_between(t.coeff, b));
      }
    }
    if (theta <= kHalfPi + kSlack && norm(b) > 0.0) {
      all.push_back(bound_q2(p, AngleFrame(b, std::min(theta, kHalfPi))));
    }
  }
  all.push_back(bound_q3(p));
  all.push_back(bound_t1(p, params));
  all.push_back(bound_t2(p, params));
  all.push_back(bound_co1(p));
  all.push_back(bound_co2(p));
  all.push_back(bound_cor3(p));

  std::vector<BoundReport> applicable;
  for (BoundReport& r : all) {
    if (r.hypothesis.satisfied && r.radius) applicable.push_back(std::move(r));
  }
  if (p.degree() >= 1) {
    BoundReport cauchy;
    cauchy.theoremId = "cauchy";
    cauchy.hypothesis.theoremId = "cauchy";
    cauchy.hypothesis.satisfied = true;
    cauchy.radius = cauchy_bound(p);
    applicable.push_back(std::move(cauchy));
  }
  std::stable_sort(applicable.begin(), applicable.end(),
                   [](const BoundReport& a, const BoundReport& b) {
                     return *a.radius < *b.radius;
                   });
  return applicable;
}

}  // namespace qek
