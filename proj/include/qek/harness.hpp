#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qek/bounds.hpp"
#include "qek/qpoly.hpp"
#include "qek/roots.hpp"

namespace qek {

/// Each kind constructs polynomials satisfying one theorem family's
/// hypotheses by design; the matching validator is the contract.
enum class EnsembleKind {
  MonotoneReal,          // dense, sorted positive uniforms (EK / cor3)
  MonotoneModulusAngle,  // lacunary, sorted moduli, angles within alpha
  ComponentMonotone,     // t2: sorted alpha, reverse-sorted beta,
                         // unimodal gamma, free delta
  ComplexCo1,            // alpha+beta*i, alpha sorted up, beta sorted down
  ComplexCo2,            // alpha+beta*i, alpha sorted up, beta free
};

struct EnsembleConfig {
  EnsembleKind kind = EnsembleKind::MonotoneReal;
  int maxDegree = 10;
  int supportSize = 4;  // k + 1 support points (lacunary kinds)
  int count = 100;
  std::uint64_t seed = 0;
  double alpha = 0.0;  // MonotoneModulusAngle cone half-width bound
  int maxGap = 4;      // largest run of missing exponents
};

/// One end-to-end check: bound radius vs. the zeros actually found.
struct VerifyRow {
  int instanceId = 0;
  std::string theoremId;
  double radius = 0.0;
  double maxZeroModulus = 0.0;
  double tight = 0.0;  // maxZeroModulus / radius
  bool ok = false;
  double worstResidual = 0.0;
  std::string note;  // diagnostics (unresolved roots, violations); not in CSV
};

struct SweepSummary {
  double minTight = 0.0;
  double meanTight = 0.0;
  double maxTight = 0.0;
  int failures = 0;
};

struct SweepResult {
  std::vector<VerifyRow> rows;
  SweepSummary summary;
};

/// Seeded ensemble; deterministic per config. Every output passes the
/// targeted validator. Throws std::invalid_argument on a config whose
/// hypotheses cannot be satisfied.
std::vector<SparseQPolynomial> generate(const EnsembleConfig& config);

/// Runs find_zeros and compares against the report's radius.
/// ok <=> maxZeroModulus <= radius*(1+1e-7) and worstResidual <= 1e-7 and
/// the zero finder resolved everything (unresolved candidates surface in
/// `note` and force ok = false). Spherical zeros contribute modulus
/// sqrt(x^2+y^2) and their residuals are probed on the fixed direction set.
/// Requires report.hypothesis.satisfied.
VerifyRow verify(const SparseQPolynomial& p, const BoundReport& report,
                 double tol = 1e-9);

/// One row per instance (ordered by instanceId) plus aggregate tightness.
/// Per-row errors are recorded in the row, never abort the batch.
/// theoremId: ek | q2 | q3 | t1 | t1-literal | t2 | co1 | co2 | cor3.
/// "t1-literal" verifies against the uncorrected radius (for erratum
/// demonstrations); it is intentionally unsound.
SweepResult sweep(const EnsembleConfig& config, const std::string& theoremId);

/// CSV with header
/// instanceId,theoremId,radius,maxZeroModulus,tight,ok,worstResidual
/// and floats printed with 17 significant digits.
std::string to_csv(const std::vector<VerifyRow>& rows);

/// Fixed probe directions on the unit imaginary sphere used to test
/// spherical zeros.
const std::vector<Quaternion>& sphere_test_directions();

}  // namespace qek
