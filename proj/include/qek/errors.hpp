#pragma once

#include <stdexcept>
#include <string>

namespace qek {

/// A theorem hypothesis does not hold for the given polynomial.
class HypothesisViolation : public std::runtime_error {
 public:
  explicit HypothesisViolation(const std::string& what)
      : std::runtime_error(what) {}
};

/// An internal numerical consistency check failed (e.g. the normal
/// polynomial came out with a non-negligible imaginary residue, or the
/// eigensolver did not converge).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace qek
