#include "pcd/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pcd/proximity.hpp"
#include "pcd/stats.hpp"

namespace pcd {

namespace {

void validate_tau_closed(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw TauOutOfRange("tau must lie in [0, 1]");
}

void validate_tau_open(double tau) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw TauOutOfRange("tau must lie in (0, 1]");
}

constexpr double kEpsMax = 0.5773502691896257;  // sqrt(3)/3

// ---- fixed symmetric degree-5 rule on the triangle --------------------------

struct RuleNode {
  double b0, b1, w;
};

const std::array<RuleNode, 7>& rule7() {
  static const std::array<RuleNode, 7> nodes = [] {
    const double s15 = std::sqrt(15.0);
    const double b1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
    const double b2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
    return std::array<RuleNode, 7>{{{1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
                                    {1.0 - 2.0 * b1, b1, w1},
                                    {b1, 1.0 - 2.0 * b1, w1},
                                    {b1, b1, w1},
                                    {1.0 - 2.0 * b2, b2, w2},
                                    {b2, 1.0 - 2.0 * b2, w2},
                                    {b2, b2, w2}}};
  }();
  return nodes;
}

template <typename F>
double integrate_triangle(Point2 a, Point2 b, Point2 c, int level, F&& f) {
  if (level <= 0) {
    const double area = std::abs(signed_area(a, b, c));
    if (area == 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& nd : rule7()) {
      const Point2 p = nd.b0 * a + nd.b1 * b + (1.0 - nd.b0 - nd.b1) * c;
      acc += nd.w * f(p);
    }
    return acc * area;
  }
  const Point2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  return integrate_triangle(a, ab, ca, level - 1, f) +
         integrate_triangle(ab, b, bc, level - 1, f) +
         integrate_triangle(ca, bc, c, level - 1, f) +
         integrate_triangle(ab, bc, ca, level - 1, f);
}

template <typename F>
double integrate_polygon(const Polygon& poly, int level, F&& f) {
  if (poly.size() < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    acc += integrate_triangle(poly[0], poly[i], poly[i + 1], level, f);
  return acc;
}

// ---- carved support of the alternatives -------------------------------------
//
// Both alternatives are described by signed convex "hole" pieces against the
// full reference triangle: corner triangles (segregation) or the central
// region left uncovered by the kept corners (association). Pairwise corner
// overlaps carry weight -1 so areas and integrals use inclusion-exclusion.

struct SignedPoly {
  Polygon poly;
  double sign;
};

struct AltGeometry {
  double tau = 0.0;
  AltKind kind = AltKind::Segregation;
  double eps = 0.0;
  std::vector<SignedPoly> holes;        // complement of the support inside T
  std::vector<Polygon> support_pieces;  // disjoint convex cover of the support
  double support_area = 0.0;
  double hole_area = 0.0;
  bool complement_form = true;
};

Polygon corner_polygon(const Triangle& t, int k, double scale) {
  const Point2 vk = t.v(k);
  return {vk, vk + scale * (t.v((k + 1) % 3) - vk),
          vk + scale * (t.v((k + 2) % 3) - vk)};
}

std::vector<Polygon> edge_region_polys(const Triangle& t) {
  const Point2 cm = t.centroid();
  std::vector<Polygon> out;
  for (int j = 0; j < 3; ++j)
    out.push_back({t.v((j + 1) % 3), t.v((j + 2) % 3), cm});
  return out;
}

AltGeometry build_alt_geometry(double tau, double eps, AltKind kind) {
  const Triangle& T = standard_equilateral();
  const double total = T.area();
  AltGeometry g;
  g.tau = tau;
  g.kind = kind;
  g.eps = eps;

  const double scale = (kind == AltKind::Segregation)
                           ? 2.0 * eps / std::sqrt(3.0)
                           : 2.0 * (kEpsMax - eps) / std::sqrt(3.0);

  std::vector<Polygon> corners;
  for (int k = 0; k < 3; ++k) corners.push_back(corner_polygon(T, k, scale));
  std::vector<Polygon> overlaps;
  if (scale > 0.5)
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        Polygon ov = clip_convex(corners[a], corners[b]);
        if (polygon_area(ov) > 0.0) overlaps.push_back(std::move(ov));
      }
  double corner_union = 0.0;
  for (const auto& c : corners) corner_union += polygon_area(c);
  for (const auto& o : overlaps) corner_union -= polygon_area(o);

  const BaryAffine bf = barycentric_functionals(T);
  const auto regions = edge_region_polys(T);

  if (kind == AltKind::Segregation) {
    g.support_area = total - corner_union;
    g.hole_area = corner_union;
    for (auto& c : corners) g.holes.push_back({std::move(c), +1.0});
    for (auto& o : overlaps) g.holes.push_back({std::move(o), -1.0});
    // support = triangle cut by the three corner half-planes (convex)
    for (const auto& rp : regions) {
      Polygon piece = rp;
      for (int k = 0; k < 3 && !piece.empty(); ++k)
        piece = clip_half_plane(piece, bf.grad[k],
                                (1.0 - scale) - bf.off[k]);
      if (polygon_area(piece) > 0.0) g.support_pieces.push_back(std::move(piece));
    }
  } else {
    g.support_area = corner_union;
    g.hole_area = total - corner_union;
    // central hole: all barycentric coordinates below 1 - scale
    Polygon hole = to_polygon(T);
    for (int k = 0; k < 3 && !hole.empty(); ++k)
      hole = clip_half_plane(hole, bf.grad[k], (1.0 - scale) - bf.off[k]);
    if (polygon_area(hole) > 0.0) g.holes.push_back({std::move(hole), +1.0});
    // support pieces: corners split along the medians
    for (const auto& c : corners)
      for (const auto& rp : regions) {
        Polygon piece = clip_convex(c, rp);
        if (polygon_area(piece) > 0.0)
          g.support_pieces.push_back(std::move(piece));
      }
  }
  g.complement_form = g.hole_area <= 0.5 * total;
  return g;
}

// Integral of the region-area field A(N(x)) over a convex polygon that lies
// inside a single edge region: the integrand 9 tau^2 b_j(x)^2 A(T) is
// quadratic, so the degree-5 rule is exact.
double integrate_region_area(const Polygon& poly, const BaryAffine& bf, int j,
                             double tau, double tri_area) {
  return integrate_polygon(poly, 0, [&](Point2 p) {
    const double bj = bf.eval(j, p);
    return 9.0 * tau * tau * bj * bj * tri_area;
  });
}

struct QuadOutcome {
  double value;
  double err;
};

// Complement form:
//   integral = int_S A(N(x)) dx - int_hole A(Gamma1(y) cut to S) dy,
// where the first part is exact piecewise-quadratic integration and the
// second runs over the (small) carved-away region.
QuadOutcome mu_alt_complement(const AltGeometry& g) {
  const Triangle& T = standard_equilateral();
  const BaryAffine bf = barycentric_functionals(T);
  const double tri_area = T.area();
  const TauParam tau(g.tau);
  const auto regions = edge_region_polys(T);

  double exact = 0.0;
  for (int j = 0; j < 3; ++j) {
    exact += integrate_region_area(regions[j], bf, j, g.tau, tri_area);
    for (const auto& h : g.holes) {
      const Polygon piece = clip_convex(h.poly, regions[j]);
      if (piece.size() >= 3)
        exact -= h.sign * integrate_region_area(piece, bf, j, g.tau, tri_area);
    }
  }

  // catcher-set area restricted to the support
  auto integrand = [&](Point2 y) {
    const auto pieces = gamma1_polygons(T, y, tau);
    double a = 0.0;
    for (const auto& pc : pieces) {
      a += polygon_area(pc);
      for (const auto& h : g.holes) {
        const Polygon cut = clip_convex(pc, h.poly);
        if (cut.size() >= 3) a -= h.sign * polygon_area(cut);
      }
    }
    return a;
  };

  // conform the hole decomposition to the medians before refining
  std::vector<Polygon> hole_cells;
  std::vector<double> hole_signs;
  for (const auto& h : g.holes)
    for (const auto& rp : regions) {
      Polygon piece = clip_convex(h.poly, rp);
      if (polygon_area(piece) > 0.0) {
        hole_cells.push_back(std::move(piece));
        hole_signs.push_back(h.sign);
      }
    }

  const double tol = 0.5e-6;  // on the mean itself
  double prev = 0.0;
  for (int level = 1; level <= 8; ++level) {
    double hole_int = 0.0;
    for (std::size_t i = 0; i < hole_cells.size(); ++i)
      hole_int += hole_signs[i] *
                  integrate_polygon(hole_cells[i], level, integrand);
    const double value = (exact - hole_int) / (g.support_area * g.support_area);
    if (level > 1) {
      const double err = std::abs(value - prev);
      if (err <= std::max(tol, 1e-14)) return {value, err};
    }
    prev = value;
  }
  throw QuadratureNotConverged(
      "alternative-mean quadrature did not reach the error target");
}

// Direct form: integrate A(N(x) cut to S) over the support pieces.
QuadOutcome mu_alt_direct(const AltGeometry& g) {
  const Triangle& T = standard_equilateral();
  const TauParam tau(g.tau);

  auto integrand = [&](Point2 x) {
    const ProximityRegion r = proximity_region(T, x, tau);
    if (r.is_singleton()) return 0.0;
    const Polygon npoly = to_polygon(*r.region);
    double a = 0.0;
    for (const auto& piece : g.support_pieces) {
      const Polygon cut = clip_convex(npoly, piece);
      if (cut.size() >= 3) a += polygon_area(cut);
    }
    return a;
  };

  const double tol = 0.5e-6;  // on the mean itself
  double prev = 0.0;
  for (int level = 2; level <= 8; ++level) {
    double acc = 0.0;
    for (const auto& piece : g.support_pieces)
      acc += integrate_polygon(piece, level, integrand);
    const double value = acc / (g.support_area * g.support_area);
    if (level > 2) {
      const double err = std::abs(value - prev);
      if (err <= std::max(tol, 1e-14)) return {value, err};
    }
    prev = value;
  }
  throw QuadratureNotConverged(
      "alternative-mean quadrature did not reach the error target");
}

}  // namespace

double mu_null(double tau) {
  validate_tau_closed(tau);
  return tau * tau / 6.0;
}

double nu_null(double tau) {
  validate_tau_closed(tau);
  const double t = tau;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double num = t4 * (6.0 * t5 - 3.0 * t4 - 25.0 * t3 + t2 + 49.0 * t + 14.0);
  const double den = 45.0 * (t + 1.0) * (2.0 * t + 1.0) * (t + 2.0);
  return num / den;
}

ArcProbComponents arc_prob_components(double tau) {
  validate_tau_open(tau);
  const double t = tau;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  ArcProbComponents c{};
  c.p2n = t4 / 15.0;
  c.pm = (2.0 * t4 - 3.0 * t3 - 4.0 * t2 + 10.0 * t + 4.0) * t4 /
         (30.0 * (2.0 * t + 1.0) * (t + 2.0));
  c.p2g = -(t2 - 7.0 * t - 2.0) * t4 /
          (15.0 * (t + 1.0) * (2.0 * t + 1.0) * (t + 2.0));
  return c;
}

NullMoments multi_triangle_moments(double tau,
                                   const std::vector<double>& weights) {
  validate_tau_closed(tau);
  if (weights.empty()) throw BadWeights("weights must be non-empty");
  double sum = 0.0, sum2 = 0.0, sum3 = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw BadWeights("weights must be nonnegative");
    sum += w;
    sum2 += w * w;
    sum3 += w * w * w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw BadWeights("weights must sum to 1");
  const double mu = mu_null(tau);
  const double nu = nu_null(tau);
  NullMoments m{};
  m.mu = mu * sum2;
  m.nu = nu * sum3 + 4.0 * mu * mu * (sum3 - sum2 * sum2);
  return m;
}

TestResult run_test(double rho, int n, double tau,
                    const std::vector<double>& weights, Direction direction,
                    int excluded_count) {
  if (n < 2) throw TooFewVertices("test needs at least 2 vertices");
  const NullMoments m = multi_triangle_moments(tau, weights);
  if (!(m.nu > 0.0))
    throw DegenerateVariance("degenerate statistic: null variance is zero");
  TestResult r;
  r.rho = rho;
  r.n = n;
  r.J = static_cast<int>(weights.size());
  r.tau = tau;
  r.mu_used = m.mu;
  r.nu_used = m.nu;
  r.direction = direction;
  r.excluded_count = excluded_count;
  r.R = std::sqrt(static_cast<double>(n)) * (rho - m.mu) / std::sqrt(m.nu);
  switch (direction) {
    case Direction::Segregation:
      r.p_value = 1.0 - normal_cdf(r.R);
      break;
    case Direction::Association:
      r.p_value = normal_cdf(r.R);
      break;
    case Direction::TwoSided:
      r.p_value = std::min(1.0, 2.0 * std::min(normal_cdf(r.R),
                                               1.0 - normal_cdf(r.R)));
      break;
  }
  return r;
}

double mu_alternative(double tau, double eps, AltKind kind,
                      double* err_estimate) {
  validate_tau_open(tau);
  if (!(eps > 0.0 && eps < kEpsMax))
    throw InvalidEpsilon("epsilon must lie in (0, sqrt(3)/3)");
  const AltGeometry g = build_alt_geometry(tau, eps, kind);
  const QuadOutcome out =
      g.complement_form ? mu_alt_complement(g) : mu_alt_direct(g);
  if (err_estimate) *err_estimate = out.err;
  return out.value;
}

double pitman_efficiency(double tau, AltKind kind) {
  validate_tau_open(tau);
  // The exact-part integral at eps = 0 through the same code path keeps the
  // rounding profile of the finite-difference stencil consistent.
  const Triangle& T = standard_equilateral();
  const BaryAffine bf = barycentric_functionals(T);
  const auto regions = edge_region_polys(T);
  double i0 = 0.0;
  for (int j = 0; j < 3; ++j)
    i0 += integrate_region_area(regions[j], bf, j, tau, T.area());
  const double f0 = i0 / (T.area() * T.area());

  auto f = [&](double e) { return mu_alternative(tau, e, kind); };
  const double h = 2e-3;
  auto second_diff = [&](double step) {
    return (2.0 * f0 - 5.0 * f(step) + 4.0 * f(2.0 * step) - f(3.0 * step)) /
           (step * step);
  };
  const double d1 = second_diff(h);
  const double d2 = second_diff(h / 2.0);
  const double richardson = (4.0 * d2 - d1) / 3.0;
  const double denom = std::max(std::abs(richardson), 1e-12);
  if (std::abs(d2 - d1) / denom > 0.02)
    throw NumericalInstability(
        "second-derivative extrapolation legs disagree by more than 2%");
  return richardson * richardson / nu_null(tau);
}

bool nu_s_positive(double tau, double eps) {
  validate_tau_open(tau);
  if (!(eps > 0.0 && eps < kEpsMax)) return false;
  const double s3 = std::sqrt(3.0);
  if (eps <= 3.0 * s3 / 10.0) return true;
  return tau > 2.0 * (s3 - 3.0 * eps) / (4.0 * eps - s3);
}

bool nu_a_positive(double tau, double eps) {
  validate_tau_open(tau);
  return eps > 0.0 && eps < kEpsMax;
}

}  // namespace pcd
