#include "pcd/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pcd {

namespace {

double longest_edge_sq(Point2 a, Point2 b, Point2 c) {
  return std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
}

}  // namespace

Triangle::Triangle(Point2 v1, Point2 v2, Point2 v3) : v_{v1, v2, v3} {
  if (!is_finite(v1) || !is_finite(v2) || !is_finite(v3))
    throw DegenerateTriangle("triangle vertex is not finite");
  const double a2 = pcd::signed_area(v1, v2, v3);
  const double scale = longest_edge_sq(v1, v2, v3);
  if (std::abs(a2) <= 1e-12 * scale)
    throw DegenerateTriangle("triangle is degenerate (collinear vertices)");
  if (a2 < 0.0) std::swap(v_[1], v_[2]);  // normalize to ccw
}

Point2 Triangle::centroid() const {
  return {(v_[0].x + v_[1].x + v_[2].x) / 3.0,
          (v_[0].y + v_[1].y + v_[2].y) / 3.0};
}

std::array<double, 3> Triangle::barycentric(Point2 p) const {
  const double inv = 1.0 / signed_area();
  const double b0 = pcd::signed_area(p, v_[1], v_[2]) * inv;
  const double b1 = pcd::signed_area(v_[0], p, v_[2]) * inv;
  return {b0, b1, 1.0 - b0 - b1};
}

Containment Triangle::classify(Point2 p, double tol) const {
  const auto b = barycentric(p);
  const double bmin = std::min({b[0], b[1], b[2]});
  if (bmin > tol) return Containment::Interior;
  if (bmin < -tol) return Containment::Outside;
  return Containment::Boundary;
}

BaryAffine barycentric_functionals(const Triangle& t) {
  // b_i is affine with b_i(v_j) = delta_ij; gradients follow from the edge
  // normals scaled by twice the area.
  BaryAffine f;
  const double inv = 0.5 / t.signed_area();
  for (int i = 0; i < 3; ++i) {
    const Point2 a = t.v((i + 1) % 3);
    const Point2 b = t.v((i + 2) % 3);
    const Point2 e = b - a;
    f.grad[i] = {-e.y * inv, e.x * inv};
    f.off[i] = -dot(f.grad[i], a);
  }
  return f;
}

AffineMap2 compose(const AffineMap2& m2, const AffineMap2& m1) {
  AffineMap2 r;
  r.a = m2.a * m1.a + m2.b * m1.c;
  r.b = m2.a * m1.b + m2.b * m1.d;
  r.c = m2.c * m1.a + m2.d * m1.c;
  r.d = m2.c * m1.b + m2.d * m1.d;
  r.t = m2(m1.t);
  return r;
}

Point2 apply_map(const AffineMap2& m, Point2 p) { return m(p); }

AffineMap2 invert_map(const AffineMap2& m) {
  const double det = m.det();
  const double scale =
      std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  if (std::abs(det) <= 1e-14 * scale * scale)
    throw SingularMap("affine map has (near-)singular linear part");
  AffineMap2 r;
  r.a = m.d / det;
  r.b = -m.b / det;
  r.c = -m.c / det;
  r.d = m.a / det;
  r.t = {-(r.a * m.t.x + r.b * m.t.y), -(r.c * m.t.x + r.d * m.t.y)};
  return r;
}

AffineMap2 to_equilateral(const Triangle& t) {
  // Pick the longest edge (ties broken by lowest starting index).
  int best = 0;
  double best_l2 = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double l2 = norm2(t.v((i + 1) % 3) - t.v(i));
    if (l2 > best_l2) {
      best_l2 = l2;
      best = i;
    }
  }
  const Point2 p0 = t.v(best);
  const Point2 p1 = t.v((best + 1) % 3);
  const Point2 p2 = t.v((best + 2) % 3);

  const Point2 e = p1 - p0;
  const double len = norm(e);
  const double cs = e.x / len, sn = e.y / len;

  // Translate p0 to the origin, rotate the edge onto +x, scale to unit length.
  AffineMap2 m = compose(AffineMap2{cs, sn, -sn, cs, {0, 0}},
                         AffineMap2::translation({-p0.x, -p0.y}));
  m = compose(AffineMap2{1.0 / len, 0, 0, 1.0 / len, {0, 0}}, m);

  Point2 apex = m(p2);
  if (apex.y < 0.0) {  // reflect across the x-axis (cw input only)
    m = compose(AffineMap2{1, 0, 0, -1, {0, 0}}, m);
    apex.y = -apex.y;
  }
  if (apex.x > 0.5) {  // reflect across x = 1/2, swapping the base endpoints
    m = compose(AffineMap2{-1, 0, 0, 1, {1, 0}}, m);
    apex.x = 1.0 - apex.x;
  }

  const double c1 = apex.x, c2 = apex.y;
  const AffineMap2 shear{1.0, (1.0 - 2.0 * c1) / (2.0 * c2),
                         0.0, std::sqrt(3.0) / (2.0 * c2),
                         {0, 0}};
  return compose(shear, m);
}

const Triangle& standard_equilateral() {
  static const Triangle t({0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0});
  return t;
}

double polygon_area(const Polygon& poly) {
  if (poly.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

Polygon clip_half_plane(const Polygon& poly, Point2 n, double c) {
  if (poly.empty()) return {};
  Polygon out;
  out.reserve(poly.size() + 1);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& cur = poly[i];
    const Point2& nxt = poly[(i + 1) % m];
    const double dc = dot(n, cur) - c;
    const double dn = dot(n, nxt) - c;
    if (dc <= 0.0) out.push_back(cur);
    if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0)) {
      const double u = dc / (dc - dn);
      out.push_back(cur + u * (nxt - cur));
    }
  }
  if (out.size() < 3) return {};
  return out;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clipper) {
  Polygon out = subject;
  const std::size_t m = clipper.size();
  if (m < 3) return {};
  for (std::size_t i = 0; i < m && !out.empty(); ++i) {
    const Point2& a = clipper[i];
    const Point2& b = clipper[(i + 1) % m];
    const Point2 d = b - a;
    // interior of a ccw clipper is the left side of each edge
    const Point2 n{d.y, -d.x};
    out = clip_half_plane(out, n, dot(n, a));
  }
  return out;
}

bool point_in_convex_polygon(const Polygon& poly, Point2 p, double tol) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    if (cross(b - a, p - a) < -tol) return false;
  }
  return true;
}

}  // namespace pcd
