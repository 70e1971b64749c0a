// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits nonzero if any criterion fails. Individual criteria
// can be selected by passing their numbers as arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qek/bounds.hpp"
#include "qek/harness.hpp"
#include "qek/mconst.hpp"
#include "qek/qpoly.hpp"
#include "qek/roots.hpp"

using namespace qek;

namespace {

constexpr double kPi = 3.14159265358979323846;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Quaternion random_quaternion(std::mt19937_64& eng, double span = 1.0) {
  std::uniform_real_distribution<double> u(-span, span);
  return {u(eng), u(eng), u(eng), u(eng)};
}

SparseQPolynomial random_poly(std::mt19937_64& eng, int degree) {
  std::vector<Term> terms;
  for (int v = 0; v <= degree; ++v) {
    Quaternion c = random_quaternion(eng);
    if (v == degree) {
      while (norm(c) < 0.2) c = random_quaternion(eng);
    }
    if (norm_sq(c) != 0.0 || v == degree) terms.push_back({v, c});
  }
  return SparseQPolynomial(std::move(terms));
}

// ---------------------------------------------------------------------
// 1. Enestroem-Kakeya containment at ensemble scale.
bool criterion_1(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  EnsembleConfig cfg;
  cfg.kind = EnsembleKind::MonotoneReal;
  cfg.count = 500;
  cfg.maxDegree = 10;
  cfg.supportSize = 3;
  cfg.seed = 20240901;
  const SweepResult r = sweep(cfg, "ek");
  const double elapsed = seconds_since(t0);
  int bad = 0;
  for (const VerifyRow& row : r.rows) {
    if (!row.ok || row.maxZeroModulus > 1.0 + 1e-7) ++bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "500 instances, failures=%d, max tight=%.6f, %.2fs", bad,
                r.summary.maxTight, elapsed);
  detail = buf;
  return bad == 0 && elapsed < 10.0;
}

// ---------------------------------------------------------------------
// 2. Corrected lacunary bound containment + erratum demonstration.
bool criterion_2(std::string& detail) {
  int failures = 0;
  int literal_failures = 0;
  int idx = 0;
  for (const double alpha : {0.0, 0.3, kPi / 4}) {
    EnsembleConfig cfg;
    cfg.kind = EnsembleKind::MonotoneModulusAngle;
    cfg.count = 100;
    cfg.maxDegree = 30;
    cfg.supportSize = 6;  // k = 5
    cfg.maxGap = 4;
    cfg.alpha = alpha;
    cfg.seed = 777000 + static_cast<std::uint64_t>(idx++);
    const SweepResult r = sweep(cfg, "t1");
    failures += r.summary.failures;

    // demonstration: scale the coefficients by 1e-3 and verify against the
    // uncorrected radius; containment must break somewhere
    for (const SparseQPolynomial& p : generate(cfg)) {
      const SparseQPolynomial small = scaled(p, 1e-3);
      BoundParams params;
      params.alpha = alpha;
      BoundReport rep = bound_t1(small, params);
      if (!rep.hypothesis.satisfied) continue;
      rep.radius = rep.params.at("literalRadius");
      if (!verify(small, rep).ok) ++literal_failures;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "300 instances, corrected failures=%d, literal-radius "
                "failures=%d (>=1 required)",
                failures, literal_failures);
  detail = buf;
  return failures == 0 && literal_failures >= 1;
}

// ---------------------------------------------------------------------
// 3. Component-monotone bound and the three corollaries.
bool criterion_3(std::string& detail) {
  struct Run {
    EnsembleKind kind;
    const char* theorem;
    std::uint64_t seed;
  };
  const Run runs[] = {
      {EnsembleKind::ComponentMonotone, "t2", 31001},
      {EnsembleKind::ComplexCo1, "co1", 31002},
      {EnsembleKind::ComplexCo2, "co2", 31003},
      {EnsembleKind::MonotoneReal, "cor3", 31004},
  };
  int failures = 0;
  std::string parts;
  for (const Run& run : runs) {
    EnsembleConfig cfg;
    cfg.kind = run.kind;
    cfg.count = 200;
    cfg.maxDegree = 12;
    cfg.supportSize = 4;
    cfg.seed = run.seed;
    const SweepResult r = sweep(cfg, run.theorem);
    failures += r.summary.failures;
    parts += std::string(run.theorem) + "=" +
             std::to_string(r.summary.failures) + " ";
  }
  detail = "200 instances each, failures: " + parts;
  return failures == 0;
}

// ---------------------------------------------------------------------
// 4. Closed-form gap constant vs. the sampling oracle.
bool criterion_4(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 eng(55100);
  int bad = 0;
  double worst_rel = 0.0;
  for (int pair = 0; pair < 200; ++pair) {
    Quaternion a = random_quaternion(eng);
    Quaternion b = random_quaternion(eng);
    while (norm(a - b) < 1e-3) b = random_quaternion(eng);
    for (const int d : {0, 1, 2, 5}) {
      const int n_prev = static_cast<int>(eng() % 4);
      const int n_j = n_prev + 1 + d;
      const double closed = m_closed_form(a, b, d);
      const double sampled =
          m_sampled(a, b, n_j, n_prev, 10000,
                    static_cast<std::uint64_t>(pair) * 8 + static_cast<std::uint64_t>(d));
      const double rel = std::abs(closed - sampled) / closed;
      worst_rel = std::max(worst_rel, rel);
      if (rel > 1e-3) ++bad;
      if (closed < sampled * (1.0 - 1e-12)) ++bad;  // sampling is a lower bound
      if (!(sampled >= 1.0) || !(closed >= 1.0)) ++bad;
    }
  }
  const double elapsed = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "800 pair/gap checks, violations=%d, worst rel=%.2e, %.2fs",
                bad, worst_rel, elapsed);
  detail = buf;
  return bad == 0 && elapsed < 5.0;
}

// ---------------------------------------------------------------------
// 5. Root-finder certification: residuals, multiplicity accounting, and
// the xi construction.
bool criterion_5(std::string& detail) {
  std::mt19937_64 eng(88200);
  int bad = 0;
  double worst_res = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int degree = 1 + static_cast<int>(eng() % 8);
    const SparseQPolynomial p = random_poly(eng, degree);
    const ZeroSet zs = find_zeros(p, 1e-9);
    if (!zs.flags.empty()) ++bad;
    if (zs.totalMultiplicity != degree) ++bad;
    for (const Zero& zv : zs.zeros) {
      if (const auto* pt = std::get_if<PointZero>(&zv)) {
        worst_res = std::max(worst_res, pt->residual);
        if (pt->residual > 1e-8) ++bad;
      }
    }
  }

  int xi_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 1 + static_cast<int>(eng() % 5);
    const SparseQPolynomial p = random_poly(eng, degree);
    if (norm(evaluate(p, Quaternion::real(1.0))) < 1e-3) continue;
    const ZeroSet zp = find_zeros(p, 1e-9);
    const ZeroSet zxi = find_zeros(build_xi(p), 1e-9);
    // zeros(xi) = zeros(p) + {1} as point sets
    std::vector<bool> matched(zxi.zeros.size(), false);
    auto match = [&](const Zero& target) {
      for (size_t i = 0; i < zxi.zeros.size(); ++i) {
        if (matched[i]) continue;
        const Zero& cand = zxi.zeros[i];
        if (const auto* pt = std::get_if<PointZero>(&target)) {
          const auto* pc = std::get_if<PointZero>(&cand);
          if (pc && norm(pt->q - pc->q) <= 1e-7) {
            matched[i] = true;
            return true;
          }
        } else {
          const auto& st = std::get<SphericalZero>(target);
          const auto* sc = std::get_if<SphericalZero>(&cand);
          if (sc && std::hypot(st.x - sc->x, st.y - sc->y) <= 1e-7) {
            matched[i] = true;
            return true;
          }
        }
      }
      return false;
    };
    bool all = true;
    for (const Zero& zv : zp.zeros) all = all && match(zv);
    all = all && match(Zero{PointZero{Quaternion::real(1.0), 1, 0.0}});
    for (size_t i = 0; i < matched.size(); ++i) all = all && matched[i];
    if (!all) ++xi_bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "300 polys, violations=%d, worst residual=%.2e; xi mismatches=%d",
                bad, worst_res, xi_bad);
  detail = buf;
  return bad == 0 && xi_bad == 0;
}

// ---------------------------------------------------------------------
// 6. Growth inequality across spheres.
bool criterion_6(std::string& detail) {
  std::mt19937_64 eng(99300);
  const int samples = 20000;
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int degree = 1 + static_cast<int>(eng() % 8);
    const SparseQPolynomial p = random_poly(eng, degree);
    SphereSampler sampler(4000 + static_cast<std::uint64_t>(trial));
    std::vector<Quaternion> dirs(samples);
    for (Quaternion& d : dirs) d = sampler.next();
    double max_unit = 0.0;
    for (const Quaternion& d : dirs) {
      max_unit = std::max(max_unit, norm(evaluate(p, d)));
    }
    for (const double R : {1.5, 2.0, 4.0}) {
      double max_r = 0.0;
      for (const Quaternion& d : dirs) {
        max_r = std::max(max_r, norm(evaluate(p, d * R)));
      }
      if (max_r > std::pow(R, degree) * max_unit * (1.0 + 1e-6)) ++bad;
    }
  }

  // equality case q^n * lambda
  int eq_bad = 0;
  const SparseQPolynomial mono({{6, Quaternion{0.4, -0.7, 0.2, 0.5}}});
  SphereSampler sampler(4321);
  double max_unit = 0.0, max_r = 0.0;
  const double R = 2.0;
  for (int s = 0; s < samples; ++s) {
    const Quaternion d = sampler.next();
    max_unit = std::max(max_unit, norm(evaluate(mono, d)));
    max_r = std::max(max_r, norm(evaluate(mono, d * R)));
  }
  if (std::abs(max_r - std::pow(R, 6) * max_unit) >
      1e-10 * std::pow(R, 6) * max_unit) {
    ++eq_bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "50 polys x 3 radii, violations=%d, equality-case bad=%d", bad,
                eq_bad);
  detail = buf;
  return bad == 0 && eq_bad == 0;
}

// ---------------------------------------------------------------------
// 7. Chord inequality dominance and its equality witnesses.
bool criterion_7(std::string& detail) {
  std::mt19937_64 eng(11400);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int bad = 0;
  int tested = 0;
  while (tested < 10000) {
    Quaternion a = random_quaternion(eng);
    Quaternion b = random_quaternion(eng);
    if (norm(a) < 1e-3 || norm(b) < 1e-3) continue;
    if (norm(a) > norm(b)) std::swap(a, b);
    const double half = 0.5 * angle_between(a, b);
    const double theta = half + u01(eng) * (kPi / 2 - half);
    if (chord_bound(a, b, theta) < norm(b - a) - 1e-12) ++bad;
    ++tested;
  }
  const double w1 =
      chord_bound(Quaternion::real(1), Quaternion::real(2), 0.0);
  const double w2 =
      chord_bound(Quaternion::real(1), Quaternion::unit_i(), kPi / 4);
  if (std::abs(w1 - 1.0) > 1e-12) ++bad;
  if (std::abs(w2 - std::sqrt(2.0)) > 1e-12) ++bad;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "10000 admissible pairs + 2 equality witnesses, violations=%d",
                bad);
  detail = buf;
  return bad == 0;
}

// ---------------------------------------------------------------------
// 8. Exact spot values.
bool criterion_8(std::string& detail) {
  bool ok = true;
  std::string parts;
  {
    const SparseQPolynomial p({{0, Quaternion::real(1)},
                               {1, Quaternion::real(1)},
                               {2, Quaternion::real(1)}});
    const ZeroSet zs = find_zeros(p);
    const bool one_sphere =
        zs.zeros.size() == 1 &&
        std::holds_alternative<SphericalZero>(zs.zeros[0]);
    double x = 0, y = 0;
    if (one_sphere) {
      x = std::get<SphericalZero>(zs.zeros[0]).x;
      y = std::get<SphericalZero>(zs.zeros[0]).y;
    }
    const VerifyRow row = verify(p, check_ek(p));
    const bool spot = one_sphere && std::abs(x + 0.5) <= 1e-9 &&
                      std::abs(y - std::sqrt(3.0) / 2.0) <= 1e-9 &&
                      std::abs(zs.maxModulus() - 1.0) <= 1e-9 &&
                      std::abs(row.tight - 1.0) <= 1e-9 && row.radius == 1.0;
    ok = ok && spot;
    parts += std::string("1+q+q^2:") + (spot ? "ok " : "BAD ");
  }
  {
    const SparseQPolynomial p({{0, Quaternion::real(1)}, {2, Quaternion::real(2)}});
    const MReport m = m_overall(p);
    BoundParams params;
    params.alpha = 0.0;
    const BoundReport r = bound_t1(p, params);
    const VerifyRow row = verify(p, r);
    const bool spot = m.overall == 3.0 && r.radius && *r.radius == 3.0 &&
                      std::abs(row.tight - 1.0 / std::sqrt(2.0) / 3.0) <= 1e-6;
    ok = ok && spot;
    parts += std::string("1+2q^2:") + (spot ? "ok" : "BAD");
  }
  detail = parts;
  return ok;
}

// ---------------------------------------------------------------------
// 9. Determinism: identical sweeps give byte-identical CSV.
bool criterion_9(std::string& detail) {
  bool ok = true;
  for (const auto& [kind, theorem] :
       std::vector<std::pair<EnsembleKind, const char*>>{
           {EnsembleKind::MonotoneReal, "ek"},
           {EnsembleKind::MonotoneModulusAngle, "t1"},
           {EnsembleKind::ComponentMonotone, "t2"}}) {
    EnsembleConfig cfg;
    cfg.kind = kind;
    cfg.count = 40;
    cfg.maxDegree = 10;
    cfg.supportSize = 4;
    cfg.alpha = 0.3;
    cfg.seed = 271828;
    const std::string a = to_csv(sweep(cfg, theorem).rows);
    const std::string b = to_csv(sweep(cfg, theorem).rows);
    ok = ok && a == b && !a.empty();
  }
  detail = "3 sweep configs repeated, byte-identical";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  using CriterionFn = bool (*)(std::string&);
  const struct {
    int id;
    const char* name;
    CriterionFn fn;
  } criteria[] = {
      {1, "Enestroem-Kakeya containment (500 monotone real)", criterion_1},
      {2, "corrected lacunary bound containment + erratum demo", criterion_2},
      {3, "component-monotone bound and corollaries", criterion_3},
      {4, "gap-constant closed form vs sampling oracle", criterion_4},
      {5, "root-finder certification and xi structure", criterion_5},
      {6, "growth inequality across spheres", criterion_6},
      {7, "chord inequality dominance", criterion_7},
      {8, "exact spot values", criterion_8},
      {9, "sweep determinism", criterion_9},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && selected.count(c.id) == 0) continue;
    std::string detail;
    const bool ok = c.fn(detail);
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", c.id,
                c.name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
