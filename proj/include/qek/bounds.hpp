#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qek/mconst.hpp"
#include "qek/qpoly.hpp"
#include "qek/quaternion.hpp"

namespace qek {

struct Violation {
  std::string condition;
  int index = -1;  // term index the violation refers to, -1 if global
  std::string detail;
};

/// Outcome of checking one theorem's hypotheses against a polynomial.
/// satisfied <=> violations is empty.
struct HypothesisReport {
  std::string theoremId;
  bool satisfied = false;
  std::vector<Violation> violations;
};

/// A zero-inclusion radius together with the hypothesis check that
/// justifies it and the parameters that went into the formula. The radius
/// is present only when the hypothesis is satisfied.
struct BoundReport {
  std::string theoremId;
  std::optional<double> radius;
  std::map<std::string, double> params;
  HypothesisReport hypothesis;
  bool erratumApplied = false;
};

/// The four real components of each coefficient,
/// a_{n_l} = alpha + beta i + gamma j + delta k, indexed by support
/// position.
struct ComponentView {
  std::vector<double> alpha, beta, gamma, delta;

  static ComponentView of(const SparseQPolynomial& p);
};

/// Optional user-supplied parameters for the bounds. Anything left unset
/// defaults to the minimal admissible value computed from the polynomial
/// (b defaults to the leading coefficient).
struct BoundParams {
  std::optional<double> alpha;
  std::optional<double> beta;  // accepted and recorded; unused by validators
  std::optional<double> theta;
  std::optional<Quaternion> b;
  std::optional<int> peak_r;  // Theorem-2.2 peak index; unset = auto
};

/// (|q2|-|q1|)cos(theta) + (|q1|+|q2|)sin(theta), an upper bound on
/// |q2 - q1| whenever |q1| <= |q2|, the 4-vector angle between them is at
/// most 2*theta, and theta <= pi/2. Throws std::domain_error naming the
/// violated precondition.
double chord_bound(const Quaternion& q1, const Quaternion& q2, double theta);

/// Classical Enestroem-Kakeya: dense support, real coefficients with
/// 0 < a_0 <= a_1 <= ... <= a_n. Radius fixed at 1.
BoundReport check_ek(const SparseQPolynomial& p);

/// Dense polynomial with nondecreasing coefficient moduli whose
/// coefficients all lie within angle theta of the frame direction b:
/// radius = cos(theta) + sin(theta) + (2 sin(theta)/|a_n|) sum_{v<n} |a_v|.
BoundReport bound_q2(const SparseQPolynomial& p, const AngleFrame& frame);

/// Dense polynomial with 0 <= alpha_1 <= ... <= alpha_n, alpha_n != 0
/// (alpha_0 unconstrained): radius = 1 + (2/alpha_n) sum_{v=0}^{n} |a_v|.
/// The sum deliberately includes v = n.
BoundReport bound_q3(const SparseQPolynomial& p);

/// Lacunary polynomial with positive nondecreasing coefficient moduli,
/// pairwise-distinct adjacent coefficients and adjacent angles at most
/// 2*alpha <= pi:
///   radius = M * { (cos a + sin a) + (2 sin a / |a_n|) sum_{j<k} |a_{n_j}| }.
///
/// This divides the sum term by |a_n|, which is what the containment
/// argument actually yields; the undivided variant is not invariant under
/// right scaling of the coefficients and is recorded in
/// params["literalRadius"] for comparison. erratumApplied is set.
/// When params.alpha is unset the minimal admissible value
/// max_j angle(a_{n_j}, a_{n_{j-1}})/2 is used.
BoundReport bound_t1(const SparseQPolynomial& p, const BoundParams& params = {});

/// Component-monotone lacunary bound: alpha components nondecreasing, beta
/// nonincreasing, gamma unimodal with peak r, delta free;
/// radius = (M/|a_n|) * [ (alpha_n - alpha_0) + (beta_0 - beta_n)
///   + 2 gamma_r - (gamma_0 + gamma_n) + 2 sum_{j<k} |delta_{n_j}|
///   + |delta_n| + |alpha_0| + |beta_0| + |gamma_0| ],
/// where subscripts 0/n denote the first/last support positions. With
/// peak_r unset, the smallest index attaining max gamma is chosen.
BoundReport bound_t2(const SparseQPolynomial& p, const BoundParams& params = {});

/// Complex-coefficient (alpha + beta i) specialization: alpha nondecreasing,
/// beta nonincreasing;
/// radius = (M/|a_n|) { (alpha_n - alpha_0 + |alpha_0|)
///                      + (beta_0 - beta_n + |beta_0|) }.
BoundReport bound_co1(const SparseQPolynomial& p);

/// Complex-coefficient bound with beta unrestricted:
/// radius = (M/|a_n|) { (alpha_n - alpha_0 + |alpha_0|)
///                      + 2 sum_{j<k} |beta_{n_j}| + |beta_n| }.
BoundReport bound_co2(const SparseQPolynomial& p);

/// Real nondecreasing coefficients with distinct adjacent values:
/// radius = (M/|a_n|) (alpha_n - alpha_0 + |alpha_0|).
BoundReport bound_cor3(const SparseQPolynomial& p);

/// Classical Cauchy radius 1 + max_{v<n} |a_v| / |a_n|; always a valid
/// inclusion radius, used as the tightness baseline. Requires degree >= 1.
double cauchy_bound(const SparseQPolynomial& p);

/// Runs every validator and returns the applicable bounds sorted by radius
/// (ascending), with the Cauchy baseline always included.
std::vector<BoundReport> auto_select(const SparseQPolynomial& p,
                                     const BoundParams& params = {});

}  // namespace qek
