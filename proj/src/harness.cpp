#include "qek/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qek/format.hpp"

namespace qek {

namespace {

constexpr double kDistinctFloor = 1e-6;

double uniform(std::mt19937_64& eng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng);
}

int uniform_int(std::mt19937_64& eng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(eng);
}

/// 0 = n_0 < n_1 < ... < n_k with runs of missing exponents at most maxGap
/// and n_k <= maxDegree.
std::vector<int> random_support(std::mt19937_64& eng, int supportSize,
                                int maxDegree, int maxGap) {
  const int k = supportSize - 1;
  std::vector<int> exps{0};
  int budget = maxDegree - k;  // spare exponents available for gaps
  for (int j = 1; j <= k; ++j) {
    const int gap = uniform_int(eng, 0, std::min(maxGap, budget));
    budget -= gap;
    exps.push_back(exps.back() + 1 + gap);
  }
  return exps;
}

std::vector<SparseQPolynomial> gen_monotone_real(std::mt19937_64& eng,
                                                 const EnsembleConfig& cfg) {
  std::vector<SparseQPolynomial> out;
  for (int i = 0; i < cfg.count; ++i) {
    const int degree = uniform_int(eng, 2, cfg.maxDegree);
    std::vector<double> coeffs;
    for (;;) {
      coeffs.clear();
      for (int v = 0; v <= degree; ++v) coeffs.push_back(uniform(eng, 0.05, 1.05));
      std::sort(coeffs.begin(), coeffs.end());
      bool spaced = true;
      for (int v = 1; v <= degree; ++v) {
        if (coeffs[v] - coeffs[v - 1] < kDistinctFloor) spaced = false;
      }
      if (spaced) break;
    }
    std::vector<Term> terms;
    for (int v = 0; v <= degree; ++v) {
      terms.push_back({v, Quaternion::real(coeffs[static_cast<size_t>(v)])});
    }
    out.push_back(SparseQPolynomial(std::move(terms)));
  }
  return out;
}

std::vector<SparseQPolynomial> gen_modulus_angle(std::mt19937_64& eng,
                                                 const EnsembleConfig& cfg) {
  std::vector<SparseQPolynomial> out;
  for (int i = 0; i < cfg.count; ++i) {
    const std::vector<int> exps =
        random_support(eng, cfg.supportSize, cfg.maxDegree, cfg.maxGap);
    const Quaternion b = sample_unit(eng);
    std::vector<Term> terms;
    double rho_prev = 0.0;
    Quaternion a_prev{};
    for (size_t j = 0; j < exps.size(); ++j) {
      for (;;) {
        const double rho = (j == 0) ? uniform(eng, 0.2, 1.0)
                                    : rho_prev + uniform(eng, 0.02, 0.5);
        const double phi = uniform(eng, -cfg.alpha / 2.0, cfg.alpha / 2.0);
        const UnitImaginary u = sample_unit_imaginary(eng);
        const Quaternion slice =
            Quaternion::real(std::cos(phi)) + u.u * std::sin(phi);
        const Quaternion a = mul(slice, b) * rho;
        if (j > 0 && norm(a - a_prev) < kDistinctFloor * std::max(1.0, norm(a))) {
          continue;  // regenerate: too close to its neighbor
        }
        terms.push_back({exps[j], a});
        rho_prev = rho;
        a_prev = a;
        break;
      }
    }
    out.push_back(SparseQPolynomial(std::move(terms)));
  }
  return out;
}

// Bump the tail of a nondecreasing sequence so entry j clears its left
// neighbor; keeps monotonicity.
void separate_tail(std::vector<double>& vals, size_t j, double step) {
  for (size_t l = j; l < vals.size(); ++l) vals[l] += step;
}

std::vector<SparseQPolynomial> gen_component(std::mt19937_64& eng,
                                             const EnsembleConfig& cfg,
                                             bool with_jk, bool beta_monotone) {
  std::vector<SparseQPolynomial> out;
  for (int i = 0; i < cfg.count; ++i) {
    const std::vector<int> exps =
        random_support(eng, cfg.supportSize, cfg.maxDegree, cfg.maxGap);
    const size_t m = exps.size();
    std::vector<double> alpha(m), beta(m), gamma(m, 0.0), delta(m, 0.0);
    for (double& v : alpha) v = uniform(eng, -1.0, 1.0);
    std::sort(alpha.begin(), alpha.end());
    for (double& v : beta) v = uniform(eng, -1.0, 1.0);
    if (beta_monotone) std::sort(beta.begin(), beta.end(), std::greater<>());
    if (with_jk) {
      // unimodal gamma: peak takes the largest draw, the flanks walk down
      const size_t peak = static_cast<size_t>(uniform_int(eng, 0, static_cast<int>(m) - 1));
      std::vector<double> vals(m);
      for (double& v : vals) v = uniform(eng, -1.0, 1.0);
      std::sort(vals.begin(), vals.end());
      for (size_t l = 0; l < peak; ++l) gamma[l] = vals[l];
      gamma[peak] = vals[m - 1];
      for (size_t l = peak + 1; l < m; ++l) gamma[l] = vals[m - 1 - (l - peak)];
      for (double& v : delta) v = uniform(eng, -1.0, 1.0);
    }
    auto coeff_at = [&](size_t l) {
      return Quaternion{alpha[l], beta[l], gamma[l], delta[l]};
    };
    for (size_t j = 1; j < m; ++j) {
      int guard = 0;
      while (norm(coeff_at(j) - coeff_at(j - 1)) <
                 kDistinctFloor * std::max(1.0, norm(coeff_at(j))) &&
             guard++ < 64) {
        separate_tail(alpha, j, 1e-3);
      }
    }
    // keep the leading coefficient well away from zero
    while (norm(coeff_at(m - 1)) < 0.05) separate_tail(alpha, m - 1, 0.1);
    std::vector<Term> terms;
    for (size_t l = 0; l < m; ++l) terms.push_back({exps[l], coeff_at(l)});
    out.push_back(SparseQPolynomial(std::move(terms)));
  }
  return out;
}

BoundReport bound_for(const std::string& theoremId,
                      const SparseQPolynomial& p,
                      const EnsembleConfig& cfg) {
  if (theoremId == "ek") return check_ek(p);
  if (theoremId == "q3") return bound_q3(p);
  if (theoremId == "q2") {
    const Quaternion b = p.leading();
    double theta = 0.0;
    for (const Term& t : p.terms()) {
      theta = std::max(theta, angle_between(t.coeff, b));
    }
    return bound_q2(p, AngleFrame(b, std::min(theta, 1.5707963267948966)));
  }
  if (theoremId == "t1" || theoremId == "t1-literal") {
    BoundParams params;
    if (cfg.kind == EnsembleKind::MonotoneModulusAngle) params.alpha = cfg.alpha;
    BoundReport r = bound_t1(p, params);
    if (theoremId == "t1-literal" && r.radius) {
      r.radius = r.params.at("literalRadius");
      r.erratumApplied = false;
    }
    return r;
  }
  if (theoremId == "t2") return bound_t2(p);
  if (theoremId == "co1") return bound_co1(p);
  if (theoremId == "co2") return bound_co2(p);
  if (theoremId == "cor3") return bound_cor3(p);
  throw std::invalid_argument("sweep: unknown theorem id '" + theoremId + "'");
}

}  // namespace

const std::vector<Quaternion>& sphere_test_directions() {
  static const std::vector<Quaternion> dirs = [] {
    const double s3 = 1.0 / std::sqrt(3.0);
    const double s2 = 1.0 / std::sqrt(2.0);
    return std::vector<Quaternion>{
        Quaternion::unit_i(),          -Quaternion::unit_i(),
        Quaternion::unit_j(),          -Quaternion::unit_j(),
        Quaternion::unit_k(),          Quaternion{0.0, s3, s3, s3},
        Quaternion{0.0, s2, -s2, 0.0}, Quaternion{0.0, -s3, s3, -s3},
    };
  }();
  return dirs;
}

std::vector<SparseQPolynomial> generate(const EnsembleConfig& cfg) {
  if (cfg.count < 1) throw std::invalid_argument("config: count must be >= 1");
  if (cfg.supportSize < 2) {
    throw std::invalid_argument("config: supportSize must be >= 2");
  }
  if (cfg.maxDegree < cfg.supportSize) {
    throw std::invalid_argument("config: maxDegree must be >= supportSize");
  }
  if (cfg.maxGap < 0) throw std::invalid_argument("config: maxGap must be >= 0");
  if (cfg.kind == EnsembleKind::MonotoneModulusAngle &&
      !(cfg.alpha >= 0.0 && cfg.alpha <= 1.5707963267948966)) {
    throw std::invalid_argument("config: alpha must lie in [0, pi/2]");
  }
  std::mt19937_64 eng(cfg.seed);
  switch (cfg.kind) {
    case EnsembleKind::MonotoneReal:
      return gen_monotone_real(eng, cfg);
    case EnsembleKind::MonotoneModulusAngle:
      return gen_modulus_angle(eng, cfg);
    case EnsembleKind::ComponentMonotone:
      return gen_component(eng, cfg, /*with_jk=*/true, /*beta_monotone=*/true);
    case EnsembleKind::ComplexCo1:
      return gen_component(eng, cfg, /*with_jk=*/false, /*beta_monotone=*/true);
    case EnsembleKind::ComplexCo2:
      return gen_component(eng, cfg, /*with_jk=*/false, /*beta_monotone=*/false);
  }
  throw std::invalid_argument("config: unknown ensemble kind");
}

VerifyRow verify(const SparseQPolynomial& p, const BoundReport& report,
                 double tol) {
  if (!report.hypothesis.satisfied || !report.radius) {
    throw std::invalid_argument("verify: hypothesis must be satisfied");
  }
  VerifyRow row;
  row.theoremId = report.theoremId;
  row.radius = *report.radius;

  const ZeroSet zs = find_zeros(p, tol);
  row.maxZeroModulus = zs.maxModulus();
  row.tight = row.maxZeroModulus / row.radius;

  double worst = 0.0;
  for (const Zero& zv : zs.zeros) {
    if (const auto* pt = std::get_if<PointZero>(&zv)) {
      worst = std::max(worst, pt->residual);
    } else {
      const auto& sp = std::get<SphericalZero>(zv);
      for (const Quaternion& u : sphere_test_directions()) {
        const Quaternion q0 = Quaternion::real(sp.x) + u * sp.y;
        worst = std::max(worst, residual(p, q0));
      }
    }
  }
  row.worstResidual = worst;

  const bool contained = row.maxZeroModulus <= row.radius * (1.0 + 1e-7);
  const bool resolved = zs.flags.empty();
  row.ok = contained && worst <= 1e-7 && resolved;
  if (!resolved) {
    std::ostringstream os;
    for (const std::string& f : zs.flags) os << f << "; ";
    row.note = os.str();
  } else if (!contained) {
    row.note = "zero outside radius";
  } else if (worst > 1e-7) {
    row.note = "residual above 1e-7";
  }
  return row;
}

SweepResult sweep(const EnsembleConfig& config, const std::string& theoremId) {
  const std::vector<SparseQPolynomial> polys = generate(config);
  SweepResult result;
  double tight_sum = 0.0;
  double tight_min = 0.0, tight_max = 0.0;
  bool first = true;
  for (size_t i = 0; i < polys.size(); ++i) {
    VerifyRow row;
    try {
      const BoundReport report = bound_for(theoremId, polys[i], config);
      if (!report.hypothesis.satisfied) {
        row.theoremId = theoremId;
        row.ok = false;
        row.note = "hypothesis violated";
        for (const Violation& v : report.hypothesis.violations) {
          row.note += "; " + v.condition;
        }
      } else {
        row = verify(polys[i], report);
      }
    } catch (const std::exception& e) {
      row.theoremId = theoremId;
      row.ok = false;
      row.note = e.what();
    }
    row.instanceId = static_cast<int>(i);
    if (!row.ok) result.summary.failures += 1;
    if (first) {
      tight_min = tight_max = row.tight;
      first = false;
    } else {
      tight_min = std::min(tight_min, row.tight);
      tight_max = std::max(tight_max, row.tight);
    }
    tight_sum += row.tight;
    result.rows.push_back(std::move(row));
  }
  result.summary.minTight = tight_min;
  result.summary.maxTight = tight_max;
  result.summary.meanTight =
      result.rows.empty() ? 0.0 : tight_sum / static_cast<double>(result.rows.size());
  return result;
}

std::string to_csv(const std::vector<VerifyRow>& rows) {
  std::string out =
      "instanceId,theoremId,radius,maxZeroModulus,tight,ok,worstResidual\n";
  for (const VerifyRow& r : rows) {
    out += std::to_string(r.instanceId);
    out += ',';
    out += r.theoremId;
    out += ',';
    out += format_float17(r.radius);
    out += ',';
    out += format_float17(r.maxZeroModulus);
    out += ',';
    out += format_float17(r.tight);
    out += ',';
    out += r.ok ? "true" : "false";
    out += ',';
    out += format_float17(r.worstResidual);
    out += '\n';
  }
  return out;
}

}  // namespace qek
