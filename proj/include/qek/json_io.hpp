#pragma once

#include <string>

#include <json.hpp>

#include "qek/bounds.hpp"
#include "qek/harness.hpp"
#include "qek/mconst.hpp"
#include "qek/qpoly.hpp"
#include "qek/roots.hpp"

namespace qek {

/// Polynomial document: {"terms": [{"exp": <int>, "coeff": [w,x,y,z]}, ...]}
/// with strictly increasing exponents. Rejects duplicates, negative
/// exponents and a zero leading coefficient (std::invalid_argument).
SparseQPolynomial poly_from_json(const nlohmann::json& j);
SparseQPolynomial poly_from_string(const std::string& text);

nlohmann::json poly_to_json(const SparseQPolynomial& p);
nlohmann::json zeroset_to_json(const ZeroSet& zs);
nlohmann::json mreport_to_json(const MReport& r);
nlohmann::json boundreport_to_json(const BoundReport& r);
nlohmann::json verifyrow_to_json(const VerifyRow& r);

/// Machine-diffable serialization: keys sorted, every float printed with
/// 17 significant digits so emitted values re-parse bit-identically.
std::string stable_dump(const nlohmann::json& j);

}  // namespace qek
