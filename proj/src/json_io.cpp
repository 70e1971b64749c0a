#include "qek/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qek/format.hpp"

namespace qek {

using nlohmann::json;

std::string format_float17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

Quaternion quaternion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument(
        "quaternion must be a 4-element array [w,x,y,z]");
  }
  for (const auto& c : j) {
    if (!c.is_number()) {
      throw std::invalid_argument("quaternion components must be numbers");
    }
  }
  return Quaternion{j[0].get<double>(), j[1].get<double>(),
                    j[2].get<double>(), j[3].get<double>()};
}

json quaternion_to_json(const Quaternion& q) {
  return json::array({q.w, q.x, q.y, q.z});
}

}  // namespace

SparseQPolynomial poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw std::invalid_argument(
        "polynomial document must be {\"terms\": [...]}");
  }
  std::vector<Term> terms;
  int prev = -1;
  for (const auto& e : j["terms"]) {
    if (!e.is_object() || !e.contains("exp") || !e.contains("coeff")) {
      throw std::invalid_argument("term must be {\"exp\": .., \"coeff\": ..}");
    }
    if (!e["exp"].is_number_integer()) {
      throw std::invalid_argument("exponent must be an integer");
    }
    const int exp = e["exp"].get<int>();
    if (exp < 0) throw std::invalid_argument("negative exponent rejected");
    if (exp == prev) throw std::invalid_argument("duplicate exponent rejected");
    if (exp < prev) {
      throw std::invalid_argument("exponents must be strictly increasing");
    }
    prev = exp;
    terms.push_back({exp, quaternion_from_json(e["coeff"])});
  }
  if (!terms.empty() && norm_sq(terms.back().coeff) == 0.0) {
    throw std::invalid_argument("zero leading coefficient rejected");
  }
  return SparseQPolynomial(std::move(terms));
}

SparseQPolynomial poly_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return poly_from_json(j);
}

json poly_to_json(const SparseQPolynomial& p) {
  json terms = json::array();
  for (const Term& t : p.terms()) {
    terms.push_back({{"exp", t.exp}, {"coeff", quaternion_to_json(t.coeff)}});
  }
  return json{{"terms", terms}};
}

json zeroset_to_json(const ZeroSet& zs) {
  json zeros = json::array();
  for (const Zero& zv : zs.zeros) {
    if (const auto* pt = std::get_if<PointZero>(&zv)) {
      zeros.push_back({{"type", "point"},
                       {"q", quaternion_to_json(pt->q)},
                       {"mult", pt->multiplicity},
                       {"residual", pt->residual}});
    } else {
      const auto& sp = std::get<SphericalZero>(zv);
      zeros.push_back({{"type", "sphere"},
                       {"x", sp.x},
                       {"y", sp.y},
                       {"mult", sp.multiplicity}});
    }
  }
  return json{{"zeros", zeros},
              {"maxModulus", zs.maxModulus()},
              {"toleranceUsed", zs.toleranceUsed},
              {"totalMultiplicity", zs.totalMultiplicity},
              {"flags", zs.flags}};
}

json mreport_to_json(const MReport& r) {
  json gaps = json::array();
  for (const auto& g : r.perGap) {
    gaps.push_back({{"j", g.j}, {"gap", g.gap}, {"value", g.value}});
  }
  return json{{"method", r.method}, {"overall", r.overall}, {"perGap", gaps}};
}

json boundreport_to_json(const BoundReport& r) {
  json violations = json::array();
  for (const Violation& v : r.hypothesis.violations) {
    violations.push_back(
        {{"condition", v.condition}, {"index", v.index}, {"detail", v.detail}});
  }
  json out{{"theoremId", r.theoremId},
           {"erratumApplied", r.erratumApplied},
           {"params", r.params},
           {"hypothesis",
            {{"theoremId", r.hypothesis.theoremId},
             {"satisfied", r.hypothesis.satisfied},
             {"violations", violations}}}};
  if (r.radius) out["radius"] = *r.radius;
  return out;
}

json verifyrow_to_json(const VerifyRow& r) {
  return json{{"instanceId", r.instanceId}, {"theoremId", r.theoremId},
              {"radius", r.radius},         {"maxZeroModulus", r.maxZeroModulus},
              {"tight", r.tight},           {"ok", r.ok},
              {"worstResidual", r.worstResidual}, {"note", r.note}};
}

namespace {

void dump_rec(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out += format_float17(v);
      } else {
        out += "null";  // JSON has no inf/nan
      }
      break;
    }
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::string:
      out += j.dump();
      break;
    case json::value_t::array: {
      out += '[';
      bool sep = false;
      for (const auto& e : j) {
        if (sep) out += ',';
        sep = true;
        dump_rec(e, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      out += '{';
      bool sep = false;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted
        if (sep) out += ',';
        sep = true;
        out += json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      out += j.dump();
      break;
  }
}

}  // namespace

std::string stable_dump(const json& j) {
  std::string out;
  dump_rec(j, out);
  return out;
}

}  // namespace qek
