#include "qek/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "qek/errors.hpp"

namespace qek {

namespace {

using Complex = std::complex<double>;

// Parlett-Reinsch style balancing by powers of two (no rounding error),
// diagonal included; see the classic eigenvalue literature. Greatly
// improves companion-matrix eigenvalues when coefficients span magnitudes.
void balance_matrix(Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      const double row_norm = m.row(i).lpNorm<1>();
      const double col_norm = m.col(i).lpNorm<1>();
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent != 0) {
        const double scaled_col = std::ldexp(col_norm, exponent);
        const double scaled_row = std::ldexp(row_norm, -exponent);
        if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
          changed = true;
          m.row(i) *= std::ldexp(1.0, -exponent);
          m.col(i) *= std::ldexp(1.0, exponent);
        }
      }
    }
  }
}

// Eigenvalues straight off the real Schur form. Schur without the unitary
// factor is all the companion matrix needs, and driving RealSchur directly
// allows a larger iteration budget plus a retry on the unbalanced matrix;
// EigenSolver's fixed budget gives up on some companions with repeated
// real roots.
std::vector<Complex> schur_eigenvalues(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::RealSchur<Eigen::MatrixXd> schur;
  schur.setMaxIterations(120 * n);
  schur.compute(m, false);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("eigensolver did not converge");
  }
  const Eigen::MatrixXd& t = schur.matrixT();
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double tr = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double det =
          t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
      const double disc = tr * tr - det;
      if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        out.push_back(Complex(tr + s, 0.0));
        out.push_back(Complex(tr - s, 0.0));
      } else {
        const double s = std::sqrt(-disc);
        out.push_back(Complex(tr, s));
        out.push_back(Complex(tr, -s));
      }
      i += 2;
    } else {
      out.push_back(Complex(t(i, i), 0.0));
      i += 1;
    }
  }
  return out;
}

std::vector<Complex> companion_eigenvalues(const RealPolynomial& rp) {
  const int deg = rp.degree();
  const double lead = rp[deg];
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) c(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) c(i, deg - 1) = -rp[i] / lead;
  Eigen::MatrixXd balanced = c;
  balance_matrix(balanced);
  try {
    return schur_eigenvalues(balanced);
  } catch (const NumericalError&) {
    // rare QR stagnation; the unbalanced matrix walks a different path
  }
  try {
    return schur_eigenvalues(c);
  } catch (const NumericalError&) {
    throw NumericalError("real_roots_complex: eigensolver did not converge");
  }
}

// Safeguarded Newton: a step is kept only if it decreases |f|. At a
// multiple root the eigensolver can park the estimate on the critical
// point between the split roots, where f and f' are both noise-level and
// a raw step is a wild ratio of rounding errors; the safeguard leaves
// such points where they are (the derivative polish handles them).
Complex newton_steps(const RealPolynomial& f, const RealPolynomial& df,
                     Complex zv, int steps) {
  double best = std::abs(f.eval(zv));
  for (int s = 0; s < steps; ++s) {
    const Complex d = df.eval(zv);
    if (std::abs(d) == 0.0) break;
    const Complex step = f.eval(zv) / d;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    const Complex cand = zv - step;
    const double val = std::abs(f.eval(cand));
    if (val >= best) break;
    zv = cand;
    best = val;
  }
  return zv;
}

double cluster_radius(const Complex& zv) { return 1e-6 * (1.0 + std::abs(zv)); }

// Base radius widened by the Newton correction size: near an m-fold root
// the eigenvalue fuzz scales like eps^(1/m) (already ~5e-4 for m = 4),
// which outgrows any fixed radius, while |rp/rp'| tracks
// (distance to the root)/m and so flags exactly the points that need a
// wider net. Simple well-separated roots keep the base radius (their
// corrections are ~1e-15), so distinct roots never merge spuriously.
double adaptive_radius(const RealPolynomial& rp, const RealPolynomial& drp,
                       const Complex& zv) {
  const double base = cluster_radius(zv);
  const double dv = std::abs(drp.eval(zv));
  if (dv == 0.0) return base;
  const double step = std::abs(rp.eval(zv)) / dv;
  // Near the real axis the correction also balloons between two close
  // distinct real roots (rp' vanishes at the Rolle point), so the net is
  // kept much tighter there; multiplicity-4 complex quartets, which need
  // the wide reach, sit at sphere height.
  const bool near_real = std::abs(zv.imag()) <= 1e-3 * (1.0 + std::abs(zv));
  const double cap = (near_real ? 3e-5 : 2e-3) * (1.0 + std::abs(zv));
  return std::max(base, std::min(16.0 * step, cap));
}

struct Cluster {
  Complex center;
  int size = 0;
  double radius = 0.0;  // widest member radius; collapse threshold
};

// Union nearby points (O(n^2), fine at this scale), average each group.
std::vector<Cluster> cluster_points(const std::vector<Complex>& pts,
                                    const std::vector<double>& radii) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<size_t>(a)] != a) a = parent[static_cast<size_t>(a)];
    return a;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double rad = 0.5 * (radii[static_cast<size_t>(i)] +
                                radii[static_cast<size_t>(j)]);
      if (std::abs(pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(j)]) <= rad) {
        parent[static_cast<size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<Cluster> clusters;
  std::vector<int> root_index(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_index[static_cast<size_t>(r)] < 0) {
      root_index[static_cast<size_t>(r)] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    Cluster& cl = clusters[static_cast<size_t>(root_index[static_cast<size_t>(r)])];
    cl.center += pts[static_cast<size_t>(i)];
    cl.size += 1;
    cl.radius = std::max(cl.radius, radii[static_cast<size_t>(i)]);
  }
  for (Cluster& cl : clusters) cl.center /= static_cast<double>(cl.size);
  return clusters;
}

RealPolynomial nth_derivative(RealPolynomial f, int k) {
  for (int i = 0; i < k; ++i) f = f.derivative();
  return f;
}

// A + I*B decomposition of p on the sphere x + y*S.
struct SliceEval {
  Quaternion A;
  Quaternion B;
  double scale = 0.0;
};

SliceEval slice_eval(const SparseQPolynomial& p, double x, double y) {
  const Complex zv(x, y);
  Complex power(1.0, 0.0);
  int current = 0;
  SliceEval s;
  for (const Term& t : p.terms()) {
    for (; current < t.exp; ++current) power *= zv;
    s.A = s.A + t.coeff * power.real();
    s.B = s.B + t.coeff * power.imag();
  }
  const double r = std::hypot(x, y);
  s.scale = p.coeff_norm_sum() *
            std::pow(std::max(1.0, r), std::max(0, p.degree()));
  return s;
}

// Unit imaginary direction nearest to v, nullopt when v has no imaginary
// part to normalize.
std::optional<Quaternion> project_unit_imaginary(const Quaternion& v) {
  const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  if (n < 1e-300) return std::nullopt;
  return Quaternion{0.0, v.x / n, v.y / n, v.z / n};
}

// Divide p by the central real quadratic q^2 - 2x q + (x^2 + y^2).
// Returns the quotient; the remainder is reported through *remainder_norm.
SparseQPolynomial divide_sphere_quadratic(const SparseQPolynomial& p, double x,
                                          double y, double* remainder_norm) {
  const int n = p.degree();
  const double d1 = -2.0 * x;
  const double d0 = x * x + y * y;
  std::vector<Quaternion> rem(static_cast<size_t>(n) + 1);
  for (const Term& t : p.terms()) rem[static_cast<size_t>(t.exp)] = t.coeff;
  std::vector<Quaternion> quot(static_cast<size_t>(std::max(0, n - 1)));
  for (int i = n; i >= 2; --i) {
    const Quaternion c = rem[static_cast<size_t>(i)];
    quot[static_cast<size_t>(i - 2)] = c;
    rem[static_cast<size_t>(i - 1)] = rem[static_cast<size_t>(i - 1)] - c * d1;
    rem[static_cast<size_t>(i - 2)] = rem[static_cast<size_t>(i - 2)] - c * d0;
  }
  *remainder_norm = norm(rem[0]) + norm(rem[1]);
  double qscale = 0.0;
  for (const Quaternion& c : quot) qscale = std::max(qscale, norm(c));
  std::vector<Term> terms;
  for (int i = 0; i < static_cast<int>(quot.size()); ++i) {
    if (norm(quot[static_cast<size_t>(i)]) > 1e-13 * qscale) {
      terms.push_back({i, quot[static_cast<size_t>(i)]});
    }
  }
  return SparseQPolynomial(std::move(terms));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double residual(const SparseQPolynomial& p, const Quaternion& q) {
  if (p.empty()) return 0.0;
  const double denom =
      p.coeff_norm_sum() * std::pow(std::max(1.0, norm(q)), p.degree());
  return norm(evaluate(p, q)) / denom;
}

double zero_modulus(const Zero& zv) {
  if (const auto* pt = std::get_if<PointZero>(&zv)) return norm(pt->q);
  const auto& sp = std::get<SphericalZero>(zv);
  return std::hypot(sp.x, sp.y);
}

double ZeroSet::maxModulus() const {
  double m = 0.0;
  for (const Zero& zv : zeros) m = std::max(m, zero_modulus(zv));
  return m;
}

std::vector<ComplexRootPair> real_roots_complex(const RealPolynomial& rp) {
  const int deg = rp.degree();
  if (deg < 1) {
    throw std::domain_error("real_roots_complex: degree must be >= 1");
  }
  std::vector<Complex> roots;
  const RealPolynomial d1 = rp.derivative();
  if (deg == 1) {
    roots.push_back(Complex(-rp[0] / rp[1], 0.0));
  } else {
    roots = companion_eigenvalues(rp);
  }
  // Radii are estimated at the raw eigenvalues as well as at the refined
  // points: the safeguarded Newton settles where |rp| reads smallest,
  // which near a multiple root is a noise dip that makes |rp/rp'|
  // underestimate the remaining distance. The raw positions carry an
  // honest estimate of the eigenvalue fuzz.
  std::vector<double> radii;
  radii.reserve(roots.size());
  for (const Complex& zv : roots) radii.push_back(adaptive_radius(rp, d1, zv));
  if (deg > 1) {
    for (size_t i = 0; i < roots.size(); ++i) {
      roots[i] = newton_steps(rp, d1, roots[i], 2);
      radii[i] = std::max(radii[i], adaptive_radius(rp, d1, roots[i]));
    }
  }
  // Upper-half-plane representatives; a conjugate pair contributes two
  // projected copies, so a pair cluster has even size 2*multiplicity.
  for (Complex& zv : roots) zv = Complex(zv.real(), std::abs(zv.imag()));

  std::vector<Cluster> clusters = cluster_points(roots, radii);
  std::vector<ComplexRootPair> pairs;
  for (const Cluster& cl : clusters) {
    const bool is_real = std::abs(cl.center.imag()) <=
                         std::max(1e-6 * (1.0 + std::abs(cl.center.real())),
                                  cl.radius);
    int mult = cl.size;
    Complex center = cl.center;
    const double guard = 16.0 * std::max(cluster_radius(cl.center), cl.radius);
    if (is_real) {
      center = Complex(center.real(), 0.0);
      if (mult >= 2 && mult <= deg) {
        const RealPolynomial f = nth_derivative(rp, mult - 1);
        const Complex refined =
            newton_steps(f, f.derivative(), Complex(center.real(), 0.0), 3);
        if (std::abs(refined - center) < guard) {
          center = Complex(refined.real(), 0.0);
        }
      }
      pairs.push_back({center.real(), 0.0, mult});
    } else {
      // cl.size counts both half-plane copies of the pair.
      mult = std::max(1, cl.size / 2);
      if (mult >= 2 && mult <= deg) {
        const RealPolynomial f = nth_derivative(rp, mult - 1);
        const Complex refined = newton_steps(f, f.derivative(), center, 3);
        if (std::abs(refined - center) < guard) {
          center = refined;
        }
      }
      pairs.push_back({center.real(), std::abs(center.imag()), mult});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return pairs;
}

std::optional<Zero> classify(const SparseQPolynomial& p, double x, double y,
                             double tol) {
  if (!(y > 0.0)) {
    throw std::domain_error("classify: y must be positive");
  }
  const SliceEval s = slice_eval(p, x, y);
  const double cap = tol * s.scale;
  if (norm(s.A) <= cap && norm(s.B) <= cap) {
    return Zero{SphericalZero{x, y, 1}};
  }
  if (norm(s.B) > cap) {
    const Quaternion dir = -(s.A * inverse(s.B));
    if (std::abs(dir.w) <= tol && std::abs(norm(dir) - 1.0) <= tol) {
      if (auto unit = project_unit_imaginary(dir)) {
        const Quaternion q0 = Quaternion::real(x) + *unit * y;
        return Zero{PointZero{q0, 1, residual(p, q0)}};
      }
    }
  }
  return std::nullopt;
}

namespace {

// Local minima of |p| on the real axis over [lo, hi]. The dips are either
// real zeros, points hovering just off the axis, or shadows of tiny
// spheres; the caller decides which by residual checks.
std::vector<double> scan_real_minima(const SparseQPolynomial& p, double lo,
                                     double hi) {
  constexpr int kGrid = 160;
  const double mid = 0.5 * (lo + hi);
  auto value = [&](double t) {
    return norm(evaluate(p, Quaternion::real(t)));
  };
  std::vector<double> grid(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    grid[static_cast<size_t>(i)] = value(lo + (hi - lo) * i / kGrid);
  }
  std::vector<double> minima;
  for (int i = 1; i < kGrid; ++i) {
    if (grid[static_cast<size_t>(i)] <= grid[static_cast<size_t>(i - 1)] &&
        grid[static_cast<size_t>(i)] <= grid[static_cast<size_t>(i + 1)]) {
      // golden-section polish of the dip
      double a = lo + (hi - lo) * (i - 1) / kGrid;
      double b = lo + (hi - lo) * (i + 1) / kGrid;
      const double phi = 0.6180339887498949;
      double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
      double f1 = value(x1), f2 = value(x2);
      while (b - a > 1e-13 * (1.0 + std::abs(mid))) {
        if (f1 > f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + phi * (b - a);
          f2 = value(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - phi * (b - a);
          f1 = value(x1);
        }
      }
      const double t = 0.5 * (a + b);
      bool dup = false;
      for (const double other : minima) {
        if (std::abs(other - t) <= 1e-8 * (1.0 + std::abs(t))) dup = true;
      }
      if (!dup) minima.push_back(t);
    }
  }
  return minima;
}

// Sphere-center polish against the original polynomial. A multiple sphere
// factor splits the corresponding root of the computed normal polynomial
// by eps^(1/2s) (already ~1e-4 for s = 2), so its location cannot be
// recovered from the normal polynomial at all; p's own coefficients still
// carry the factor exactly. Pattern search on (x, y) minimizing the worst
// |p(x + u y)| over a few fixed directions; simple and immune to the
// degenerate Jacobian a repeated factor produces.
double sphere_probe(const SparseQPolynomial& p, double x, double y) {
  static const Quaternion dirs[4] = {
      Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k(),
      Quaternion{0.0, 0.5773502691896258, 0.5773502691896258,
                 0.5773502691896258}};
  double worst = 0.0;
  for (const Quaternion& u : dirs) {
    worst = std::max(worst, norm(evaluate(p, Quaternion::real(x) + u * y)));
  }
  return worst;
}

std::pair<double, double> polish_sphere_center(const SparseQPolynomial& p,
                                               double x, double y) {
  const double r = std::hypot(x, y);
  double h = 1e-3 * (1.0 + r);
  double best = sphere_probe(p, x, y);
  int guard = 0;
  while (h > 1e-13 * (1.0 + r) && guard++ < 600) {
    bool improved = false;
    const double moves[4][2] = {{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
    for (const auto& mv : moves) {
      const double ny = y + mv[1];
      if (ny <= 0.0) continue;
      const double v = sphere_probe(p, x + mv[0], ny);
      if (v < best) {
        best = v;
        x += mv[0];
        y = ny;
        improved = true;
        break;
      }
    }
    if (!improved) h *= 0.5;
  }
  return {x, y};
}

// Last-resort acceptance for a candidate pair that failed classify's unit
// test: project -A*B^{-1} onto the unit imaginary sphere anyway and accept
// the point if its residual clears the tolerance. The residual is the
// ground truth; this absorbs the 1/y amplification of coordinate error at
// small sphere radii.
std::optional<PointZero> point_by_projection(const SparseQPolynomial& p,
                                             double x, double y, double tol) {
  const SliceEval s = slice_eval(p, x, y);
  if (norm(s.B) == 0.0) return std::nullopt;
  const auto unit = project_unit_imaginary(-(s.A * inverse(s.B)));
  if (!unit) return std::nullopt;
  const Quaternion q0 = Quaternion::real(x) + *unit * y;
  const double res = residual(p, q0);
  if (res <= tol) return PointZero{q0, 1, res};
  return std::nullopt;
}

// A zero with a tiny imaginary part collapses into a real candidate whose
// residual then refuses to vanish. |p(x)| bottoms out at |A| while the
// B-slice grows linearly in y, so y ~ |A| / |dB/dy| locates the true
// sphere height; the projection check then validates the point.
std::optional<PointZero> off_axis_point(const SparseQPolynomial& p, double x,
                                        double tol) {
  constexpr double kProbeY = 1e-4;
  const double a0 = norm(evaluate(p, Quaternion::real(x)));
  const SliceEval probe = slice_eval(p, x, kProbeY);
  const double b_slope = norm(probe.B) / kProbeY;
  if (!(b_slope > 1e-300)) return std::nullopt;
  double y = a0 / b_slope;
  for (int it = 0; it < 3; ++it) {
    if (!(y > 0.0) || !std::isfinite(y)) return std::nullopt;
    const SliceEval s = slice_eval(p, x, y);
    const double slope = norm(s.B) / y;
    if (!(slope > 1e-300)) break;
    y = norm(s.A) / slope;
  }
  if (!(y > 0.0) || !std::isfinite(y)) return std::nullopt;
  return point_by_projection(p, x, y, tol);
}

bool zero_before(const Zero& a, const Zero& b) {
  auto key = [](const Zero& zv) {
    if (const auto* pt = std::get_if<PointZero>(&zv)) {
      const Quaternion& q = pt->q;
      const double im = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
      return std::tuple(q.w, im, 0, q.x, q.y, q.z);
    }
    const auto& sp = std::get<SphericalZero>(zv);
    return std::tuple(sp.x, sp.y, 1, 0.0, 0.0, 0.0);
  };
  return key(a) < key(b);
}

}  // namespace

namespace {

struct SphereCandidate {
  double x = 0.0;
  double y = 0.0;
  int multiplicity = 0;
};

// An unresolved near-real candidate, measured in roots of the normal
// polynomial that it accounts for (a real candidate of multiplicity m
// carries m, a conjugate pair carries 2m).
struct RealFragment {
  double x = 0.0;
  int nroots = 0;
};

constexpr double kSphereFloor = 1e-6;  // below this a "sphere" is a point

bool near_real(double x, double y) { return y <= 1e-3 * (1.0 + std::abs(x)); }

// Resolves a cluster of near-real fragments against p itself: two close
// real zeros, a multiple real zero, an off-axis point, or a tiny sphere
// all fragment the normal polynomial's roots beyond per-candidate repair,
// but every one of them leaves a dip of |p| on the real window.
void resolve_real_group(const SparseQPolynomial& p,
                        const std::vector<RealFragment>& group, double tol,
                        ZeroSet& out,
                        std::vector<SphereCandidate>& sphere_pool) {
  double lo = group.front().x, hi = group.front().x;
  int nroots = 0;
  for (const RealFragment& f : group) {
    lo = std::min(lo, f.x);
    hi = std::max(hi, f.x);
    nroots += f.nroots;
  }
  const double pad = 1e-3 * (1.0 + std::abs(lo) + std::abs(hi));
  int budget = (nroots + 1) / 2;  // available point-multiplicity units

  std::vector<PointZero> points;
  for (const double t : scan_real_minima(p, lo - pad, hi + pad)) {
    if (budget <= 0) break;
    const Quaternion root = Quaternion::real(t);
    const double res = residual(p, root);
    if (res <= tol) {
      points.push_back(PointZero{root, 1, res});
      budget -= 1;
      continue;
    }
    if (auto off = off_axis_point(p, t, tol)) {
      points.push_back(*off);
      budget -= 1;
      continue;
    }
    if (budget >= 2) {
      const auto [sx, sy] =
          polish_sphere_center(p, t, 1e-4 * (1.0 + std::abs(t)));
      const double scale =
          p.coeff_norm_sum() *
          std::pow(std::max(1.0, std::hypot(sx, sy)), p.degree());
      if (sy >= kSphereFloor * (1.0 + std::abs(sx)) &&
          sphere_probe(p, sx, sy) <= tol * scale) {
        sphere_pool.push_back({sx, sy, 2});
        budget -= 2;
      }
    }
  }
  if (points.empty() && budget == (nroots + 1) / 2) {
    // nothing resolved: report the fragment as-is rather than dropping it
    const double x_mid = 0.5 * (lo + hi);
    const Quaternion q0 = Quaternion::real(x_mid);
    const double res = residual(p, q0);
    out.flags.push_back("unresolved real-axis group at x=" + fmt(x_mid) +
                        " carrying " + std::to_string(nroots) + " roots");
    out.zeros.push_back(PointZero{q0, std::max(1, nroots / 2), res});
    return;
  }
  if (budget > 0 && !points.empty()) {
    points.front().multiplicity += budget;  // e.g. a double real zero
    budget = 0;
  }
  for (PointZero& pz : points) out.zeros.push_back(pz);
  if (budget > 0) {
    out.flags.push_back("real-axis group at x=" + fmt(lo) +
                        " left unassigned multiplicity " +
                        std::to_string(budget));
  }
}

// Peels sphere factors off p at (x, y): each division by the central
// quadratic consumes multiplicity 2; an odd leftover is a point zero ON
// the sphere, located by classifying the quotient.
void emit_sphere_chain(const SparseQPolynomial& p, double x, double y,
                       int multiplicity, double tol, ZeroSet& out) {
  int remaining = multiplicity;
  int sphere_mult = 0;
  SparseQPolynomial work = p;
  double cx = x, cy = y;
  std::optional<Zero> zv = classify(work, cx, cy, tol);
  while (zv && std::holds_alternative<SphericalZero>(*zv) && remaining >= 2) {
    sphere_mult += 1;
    remaining -= 2;
    if (remaining == 0) break;
    double rem_norm = 0.0;
    work = divide_sphere_quadratic(work, cx, cy, &rem_norm);
    if (rem_norm > 1e-8 * (1.0 + p.coeff_norm_sum())) {
      out.flags.push_back("sphere division remainder " + fmt(rem_norm) +
                          " at (" + fmt(cx) + "," + fmt(cy) + ")");
    }
    if (work.degree() < 1) break;
    // A repeated factor caps the polish accuracy on p at ~sqrt(eps); the
    // quotient holds the factor with one power less, so re-polishing
    // against it recovers full precision for the next classification.
    // Only worth it while another sphere layer is possible: with a lone
    // multiplicity slot left the quotient has a point zero there, not a
    // sphere, and the probe would walk off it.
    if (remaining >= 2) {
      const auto [nx, ny] = polish_sphere_center(work, cx, cy);
      const double scale =
          work.coeff_norm_sum() *
          std::pow(std::max(1.0, std::hypot(nx, ny)),
                   std::max(0, work.degree()));
      if (ny > 0.0 && sphere_probe(work, nx, ny) <= tol * scale) {
        cx = nx;
        cy = ny;
      }
    }
    zv = classify(work, cx, cy, tol);
  }
  if (sphere_mult > 0) {
    out.zeros.push_back(SphericalZero{x, y, sphere_mult});
  }
  if (remaining == 0) return;

  if (zv && std::holds_alternative<SphericalZero>(*zv)) {
    // sphere-like slice with only one multiplicity slot left: an
    // under-merged cluster upstream
    out.flags.push_back("sphere-like candidate with unit multiplicity at (" +
                        fmt(x) + "," + fmt(y) + ")");
    out.zeros.push_back(SphericalZero{x, y, 1});
    return;
  }
  if (!zv) {
    if (auto fallback = point_by_projection(work, cx, cy, tol)) {
      zv = Zero{*fallback};
    }
  }
  if (!zv) {
    out.flags.push_back("unresolved sphere leftover at (" + fmt(cx) + "," +
                        fmt(cy) + ") mult " + std::to_string(remaining));
    return;
  }
  PointZero pz = std::get<PointZero>(*zv);
  pz.multiplicity = remaining;
  pz.residual = residual(p, pz.q);
  if (pz.residual > tol) {
    out.flags.push_back("point zero residual " + fmt(pz.residual) +
                        " above tolerance at (" + fmt(cx) + "," + fmt(cy) +
                        ")");
  }
  out.zeros.push_back(pz);
}

}  // namespace

ZeroSet find_zeros(const SparseQPolynomial& p, double tol) {
  const int n = p.degree();
  if (n < 1) {
    throw std::domain_error("find_zeros: degree must be >= 1");
  }
  const RealPolynomial rp = normal_poly(p);
  const std::vector<ComplexRootPair> pairs = real_roots_complex(rp);

  ZeroSet out;
  out.toleranceUsed = tol;
  std::vector<SphereCandidate> sphere_pool;
  std::vector<RealFragment> fragments;

  for (const ComplexRootPair& pr : pairs) {
    if (pr.y == 0.0) {
      // Real candidate. N(t) = |p(t)|^2 on the reals, so a real root of N
      // is always a zero of p and carries even multiplicity. Odd counts
      // and residual failures are handed to the group resolver, which
      // sees the fragments of a structure together.
      const Quaternion q0 = Quaternion::real(pr.x);
      const double res = residual(p, q0);
      if (res <= tol && pr.multiplicity % 2 == 0) {
        out.zeros.push_back(PointZero{q0, pr.multiplicity / 2, res});
      } else {
        fragments.push_back({pr.x, pr.multiplicity});
      }
      continue;
    }

    std::optional<Zero> zv = classify(p, pr.x, pr.y, tol);
    if (zv && std::holds_alternative<SphericalZero>(*zv)) {
      sphere_pool.push_back({pr.x, pr.y, pr.multiplicity});
      continue;
    }
    if (!zv) {
      // One refinement pass: re-polish the pair on the derivative where
      // the root is simple and reclassify; then try the residual-checked
      // projection; then test the sphere hypothesis directly against p
      // (the normal polynomial cannot locate multiple sphere factors, but
      // p's own coefficients can); near-real leftovers join the group
      // resolver.
      const int mu = std::max(1, pr.multiplicity);
      RealPolynomial f = nth_derivative(rp, std::min(mu, rp.degree()) - 1);
      const Complex polished =
          newton_steps(f, f.derivative(), Complex(pr.x, pr.y), 3);
      const double px = polished.real();
      const double py = std::abs(polished.imag());
      if (py > 0.0) zv = classify(p, px, py, tol);
      if (zv && std::holds_alternative<SphericalZero>(*zv)) {
        sphere_pool.push_back({px, py, pr.multiplicity});
        continue;
      }
      if (!zv) {
        if (auto fallback = point_by_projection(p, pr.x, pr.y, tol)) {
          zv = Zero{*fallback};
        }
      }
      if (!zv) {
        const auto [sx, sy] = polish_sphere_center(p, pr.x, pr.y);
        const double scale =
            p.coeff_norm_sum() * std::pow(std::max(1.0, std::hypot(sx, sy)), n);
        if (sy >= kSphereFloor * (1.0 + std::abs(sx)) &&
            sphere_probe(p, sx, sy) <= tol * scale) {
          sphere_pool.push_back({sx, sy, pr.multiplicity});
          continue;
        }
        if (near_real(pr.x, pr.y)) {
          fragments.push_back({pr.x, 2 * pr.multiplicity});
          continue;
        }
        out.flags.push_back("unresolved spurious candidate at (" + fmt(pr.x) +
                            "," + fmt(pr.y) + ") mult " +
                            std::to_string(pr.multiplicity));
        continue;
      }
    }

    PointZero pz = std::get<PointZero>(*zv);
    pz.multiplicity = pr.multiplicity;
    pz.residual = residual(p, pz.q);
    if (pz.residual > tol) {
      out.flags.push_back("point zero residual " + fmt(pz.residual) +
                          " above tolerance at (" + fmt(pr.x) + "," +
                          fmt(pr.y) + ")");
    }
    out.zeros.push_back(pz);
  }

  // Candidates that polish to the same center are one sphere whose root of
  // the normal polynomial split under rounding; pool their multiplicities
  // before peeling factors. Candidates that fail the probe after polishing
  // are not spheres at all: near the axis they are fragments of a real
  // structure, elsewhere they are surfaced as flags.
  std::vector<SphereCandidate> verified;
  for (SphereCandidate& c : sphere_pool) {
    const auto [sx, sy] = polish_sphere_center(p, c.x, c.y);
    const double scale =
        p.coeff_norm_sum() * std::pow(std::max(1.0, std::hypot(sx, sy)), n);
    if (sy >= kSphereFloor * (1.0 + std::abs(sx)) &&
        sphere_probe(p, sx, sy) <= tol * scale) {
      verified.push_back({sx, sy, c.multiplicity});
    } else if (near_real(c.x, c.y)) {
      fragments.push_back({c.x, 2 * c.multiplicity});
    } else {
      out.flags.push_back("unresolved sphere candidate at (" + fmt(c.x) + "," +
                          fmt(c.y) + ") mult " +
                          std::to_string(c.multiplicity));
    }
  }
  sphere_pool = std::move(verified);

  // Near-real fragments within reach of each other describe one structure.
  std::sort(fragments.begin(), fragments.end(),
            [](const RealFragment& a, const RealFragment& b) { return a.x < b.x; });
  for (size_t i = 0; i < fragments.size();) {
    std::vector<RealFragment> group{fragments[i]};
    size_t j = i + 1;
    while (j < fragments.size() &&
           fragments[j].x - fragments[j - 1].x <=
               2e-3 * (1.0 + std::abs(fragments[j].x))) {
      group.push_back(fragments[j]);
      ++j;
    }
    resolve_real_group(p, group, tol, out, sphere_pool);
    i = j;
  }
  // The polish resolves an s-fold sphere center only to ~eps^(1/s), so the
  // pooling net must be wider than that; distinct spheres of a desk-scale
  // polynomial are never this close, and the peeling chain verifies every
  // pool anyway.
  std::vector<bool> used(sphere_pool.size(), false);
  for (size_t i = 0; i < sphere_pool.size(); ++i) {
    if (used[i]) continue;
    SphereCandidate pool = sphere_pool[i];
    for (size_t j = i + 1; j < sphere_pool.size(); ++j) {
      if (used[j]) continue;
      const double d = std::hypot(sphere_pool[j].x - pool.x,
                                  sphere_pool[j].y - pool.y);
      if (d <= 3e-5 * (1.0 + std::hypot(pool.x, pool.y))) {
        pool.multiplicity += sphere_pool[j].multiplicity;
        used[j] = true;
      }
    }
    emit_sphere_chain(p, pool.x, pool.y, pool.multiplicity, tol, out);
  }

  int total = 0;
  for (const Zero& zv : out.zeros) {
    if (const auto* pt = std::get_if<PointZero>(&zv)) {
      total += pt->multiplicity;
    } else {
      total += 2 * std::get<SphericalZero>(zv).multiplicity;
    }
  }
  out.totalMultiplicity = total;
  if (total != n) {
    out.flags.push_back("multiplicity accounting mismatch: " +
                        std::to_string(total) + " vs degree " +
                        std::to_string(n));
  }
  std::sort(out.zeros.begin(), out.zeros.end(), zero_before);
  return out;
}

}  // namespace qek
