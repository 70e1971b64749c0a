#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qek/qpoly.hpp"
#include "qek/quaternion.hpp"

namespace qek {

/// Per-gap extremal constants
///   M_{n_j} = max_{|q|=1} |q^{n_j} a_{n_j} - q^{n_{j-1}+1} a_{n_{j-1}}| /
///             |a_{n_j} - a_{n_{j-1}}|
/// and their maximum M. Every entry is >= 1: the value at q = 1 is exactly 1.
struct MReport {
  struct GapValue {
    int j = 0;      // 1-based gap index
    int gap = 0;    // d_j = n_j - n_{j-1} - 1
    double value = 0.0;
  };
  std::vector<GapValue> perGap;
  double overall = 1.0;
  std::string method;  // "closed-form" | "sampled"
};

enum class MMethod { ClosedForm, Sampled };

/// Closed form of the gap constant for adjacent coefficients a_j, a_prev
/// separated by d missing exponents.
///
/// On |q| = 1 factor q^{n_{j-1}+1} out of the numerator on the left, so
/// |num| = |q^d a_j - a_prev|. For d = 0 the numerator collapses to
/// |a_j - a_prev| and the constant is 1. For d >= 1 the power map q -> q^d
/// is onto the unit sphere and max_{|w|=1} |w a - b| = |a| + |b| (attained
/// where Re(w a conj(b)) = -|a||b|), giving (|a_j| + |a_prev|)/|a_j - a_prev|.
/// Throws std::domain_error when a_j == a_prev.
double m_closed_form(const Quaternion& a_j, const Quaternion& a_prev, int d);

/// Independent maximization oracle for the same constant: evaluates the
/// quotient over `samples` uniform unit quaternions (plus the q = 1 anchor,
/// so the result is always >= 1), then refines locally: golden-section on
/// the slice angle t of q = cos t + u sin t with the imaginary direction u
/// of the best sample fixed, followed by a few shrinking-cone polish rounds
/// on u. Always a lower bound on the true maximum; agrees with
/// m_closed_form within 1e-3 relative at samples = 10^4.
double m_sampled(const Quaternion& a_j, const Quaternion& a_prev, int n_j,
                 int n_prev, int samples, std::uint64_t seed);

/// Gap constants for every adjacent pair of p plus M = max_j M_{n_j}.
/// Throws HypothesisViolation naming the offending index when two adjacent
/// coefficients are equal. `samples`/`seed` apply to the sampled method.
MReport m_overall(const SparseQPolynomial& p,
                  MMethod method = MMethod::ClosedForm, int samples = 10000,
                  std::uint64_t seed = 0);

}  // namespace qek
