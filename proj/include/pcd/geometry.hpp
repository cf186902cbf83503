#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "pcd/errors.hpp"

namespace pcd {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::sqrt(norm2(a)); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Twice-signed-area free function; positive for counterclockwise (a,b,c).
inline double signed_area(Point2 a, Point2 b, Point2 c) {
  return 0.5 * cross(b - a, c - a);
}

enum class Containment { Interior, Boundary, Outside };

/// Default tolerance band, in barycentric coordinates, for boundary
/// classification.
inline constexpr double kBoundaryTol = 1e-9;

/// Triangles are stored with counterclockwise vertex order. Construction
/// rejects (near-)collinear vertex triples: |signed area| must exceed
/// 1e-12 * (longest edge)^2, a scale-free threshold.
class Triangle {
 public:
  Triangle(Point2 v1, Point2 v2, Point2 v3);

  const Point2& v(int i) const { return v_[i]; }            // i in {0,1,2}
  const std::array<Point2, 3>& vertices() const { return v_; }
  Point2 centroid() const;
  double signed_area() const { return pcd::signed_area(v_[0], v_[1], v_[2]); }
  double area() const { return signed_area(); }             // positive, ccw

  /// Barycentric coordinates of p; components sum to 1.
  std::array<double, 3> barycentric(Point2 p) const;

  /// Classification of p against the closed triangle with a tolerance band
  /// of +-tol (barycentric units) around the boundary.
  Containment classify(Point2 p, double tol = kBoundaryTol) const;

 private:
  std::array<Point2, 3> v_;
};

inline Containment point_in_triangle(const Triangle& t, Point2 p,
                                     double tol = kBoundaryTol) {
  return t.classify(p, tol);
}

/// Barycentric coordinates as affine functionals: b_i(p) = dot(grad[i], p) + off[i].
struct BaryAffine {
  std::array<Point2, 3> grad;
  std::array<double, 3> off;
  double eval(int i, Point2 p) const { return dot(grad[i], p) + off[i]; }
};

BaryAffine barycentric_functionals(const Triangle& t);

/// Affine map p -> L p + t with invertible linear part L.
struct AffineMap2 {
  // Linear part, row-major.
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  Point2 t{0.0, 0.0};

  Point2 operator()(Point2 p) const {
    return {a * p.x + b * p.y + t.x, c * p.x + d * p.y + t.y};
  }
  double det() const { return a * d - b * c; }

  static AffineMap2 identity() { return {}; }
  static AffineMap2 translation(Point2 by) { return {1, 0, 0, 1, by}; }
};

/// Composition: (m2 * m1)(p) = m2(m1(p)).
AffineMap2 compose(const AffineMap2& m2, const AffineMap2& m1);

Point2 apply_map(const AffineMap2& m, Point2 p);

/// Inverse map; throws SingularMap when the linear part is not invertible.
AffineMap2 invert_map(const AffineMap2& m);

/// The affine map carrying t's vertices onto the standard equilateral
/// triangle {(0,0), (1,0), (1/2, sqrt(3)/2)}. Built as a composition of
/// rigid motions and scalings that put the longest edge on [0,1] x {0}
/// with the apex at (c1, c2), 0 < c1 <= 1/2, followed by the shear/stretch
/// (u, v) -> (u + (1-2 c1) v / (2 c2), sqrt(3) v / (2 c2)).
AffineMap2 to_equilateral(const Triangle& t);

/// The standard equilateral triangle used as the reference geometry.
const Triangle& standard_equilateral();

// --- convex polygon helpers -------------------------------------------------
//
// Polygons are counterclockwise vertex lists. All clipping here is convex
// against half-planes, so Sutherland-Hodgman steps suffice.

using Polygon = std::vector<Point2>;

double polygon_area(const Polygon& poly);

/// Keep the part of poly with dot(n, p) <= c.
Polygon clip_half_plane(const Polygon& poly, Point2 n, double c);

/// Intersection of subject with a convex ccw clipper.
Polygon clip_convex(const Polygon& subject, const Polygon& clipper);

/// Membership in a convex ccw polygon (closed; tolerance in absolute units).
bool point_in_convex_polygon(const Polygon& poly, Point2 p, double tol = 1e-12);

inline Polygon to_polygon(const Triangle& t) {
  return {t.v(0), t.v(1), t.v(2)};
}

}  // namespace pcd
