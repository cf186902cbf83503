#include "pcd/proximity.hpp"

#include <algorithm>
#include <cmath>

namespace pcd {

TauParam::TauParam(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw TauOutOfRange("tau must lie in [0, 1]");
}

int edge_region(const Triangle& t, Point2 x, double tol) {
  if (t.classify(x, tol) == Containment::Outside)
    throw OutsideTriangle("point lies outside the triangle");
  const auto b = t.barycentric(x);
  const double bmin = std::min({b[0], b[1], b[2]});
  // ties on the median segments go to the lowest-index edge
  for (int i = 0; i < 2; ++i)
    if (b[i] <= bmin + 1e-12) return i + 1;
  return 3;
}

ProximityRegion proximity_region(const Triangle& t, Point2 x, TauParam tau,
                                 double tol) {
  const Containment c = t.classify(x, tol);
  if (c == Containment::Outside)
    throw OutsideTriangle("point lies outside the triangle");
  ProximityRegion r;
  r.center = x;
  if (tau.value() == 0.0 || c == Containment::Boundary) return r;

  const int j = edge_region(t, x, tol) - 1;
  const double s = 3.0 * tau.value() * t.barycentric(x)[j];
  const Point2 cm = t.centroid();
  r.scale = s;
  r.region.emplace(x + s * (t.v(0) - cm), x + s * (t.v(1) - cm),
                   x + s * (t.v(2) - cm));
  return r;
}

double region_area(const Triangle& t, Point2 x, TauParam tau, double tol) {
  const ProximityRegion r = proximity_region(t, x, tau, tol);
  if (r.is_singleton()) return 0.0;
  return r.scale * r.scale * t.area();
}

bool in_proximity_region(const Triangle& t, Point2 x, TauParam tau, Point2 y,
                         double tol) {
  if (t.classify(y, tol) == Containment::Outside)
    throw OutsideTriangle("target point lies outside the triangle");
  const ProximityRegion r = proximity_region(t, x, tau, tol);
  if (r.is_singleton()) return y == x;
  return r.region->classify(y, tol) != Containment::Outside;
}

bool in_gamma1(const Triangle& t, Point2 x, TauParam tau, Point2 y,
               double tol) {
  return in_proximity_region(t, y, tau, x, tol);
}

std::vector<Polygon> gamma1_polygons(const Triangle& t, Point2 p, TauParam tau,
                                     double tol) {
  if (t.classify(p, tol) == Containment::Outside)
    throw OutsideTriangle("point lies outside the triangle");
  std::vector<Polygon> pieces;
  const double tv = tau.value();
  if (tv == 0.0) return pieces;

  const BaryAffine bf = barycentric_functionals(t);
  const Point2 cm = t.centroid();
  const double area_floor = 1e-14 * t.area();

  for (int j = 0; j < 3; ++j) {
    // Edge region of e_j: triangle (v_{j+1}, v_{j+2}, centroid), ccw.
    Polygon poly{t.v((j + 1) % 3), t.v((j + 2) % 3), cm};
    const double bp_scale = std::sqrt(norm2(bf.grad[0]) + norm2(bf.grad[1]) +
                                      norm2(bf.grad[2]));
    for (int m = 0; m < 3 && !poly.empty(); ++m) {
      // p inside the region of x requires b_m(x) - tau b_j(x) <= b_m(p).
      const Point2 nrm = bf.grad[m] - tv * bf.grad[j];
      const double rhs = bf.eval(m, p) - (bf.off[m] - tv * bf.off[j]);
      if (norm(nrm) <= 1e-14 * bp_scale) {
        if (rhs < 0.0) poly.clear();
        continue;
      }
      poly = clip_half_plane(poly, nrm, rhs);
    }
    if (!poly.empty() && polygon_area(poly) > area_floor)
      pieces.push_back(std::move(poly));
  }
  return pieces;
}

Gamma1Closed gamma1_area_closed(Point2 pt, TauParam tau) {
  const double tv = tau.value();
  if (!(tv > 0.0 && tv < 1.0))
    throw TauBoundary("closed-form catcher areas require tau in (0, 1)");
  const double s3 = std::sqrt(3.0);
  const double x = pt.x, y = pt.y;
  const double tol = 1e-12;
  if (!(x >= -tol && x <= 0.5 + tol && y >= -tol && y <= x / s3 + tol))
    throw OutsideSubregion("point outside the reference subtriangle");

  const double s1 = (1.0 - tv) / 2.0;
  const double q1 = (1.0 - tv) / (2.0 * s3);
  const double q2 = (1.0 - x) * (1.0 - tv) / (s3 * (1.0 + tv));
  const double q3 = (1.0 - tv) * x / (s3 * (1.0 + tv));

  Gamma1Closed out{};
  if (y <= q3) {
    out.which = Gamma1Case::R1;
    out.area = 3.0 * tv * tv * s3 * y * y / ((tv - 1.0) * (tv - 1.0) * (2.0 * tv + 1.0));
    return out;
  }
  if (x <= s1 || y <= q2) {
    out.which = Gamma1Case::R2;
    out.area = 3.0 * s3 *
               (x * x * tv + 2.0 * s3 * x * y * tv - y * y * tv - x * x +
                2.0 * s3 * x * y - 3.0 * y * y) *
               tv / (4.0 * (1.0 - tv) * (2.0 * tv + 1.0) * (tv + 2.0));
    return out;
  }
  if (y <= q1) {
    out.which = Gamma1Case::R3;
    const double inner =
        2.0 * x * x * tv * tv + 2.0 * y * y * tv * tv - 4.0 * x * x * tv -
        2.0 * x * tv * tv + 4.0 * y * y * tv + 2.0 * s3 * y * tv * tv +
        2.0 * x * x + 4.0 * x * tv + 6.0 * y * y + tv * tv - 2.0 * x -
        2.0 * s3 * y - 2.0 * tv + 1.0;
    out.area = -3.0 * s3 * inner * tv /
               (4.0 * (2.0 * tv + 1.0) * (tv - 1.0) * (tv - 1.0) * (tv + 2.0));
    return out;
  }
  out.which = Gamma1Case::R4;
  out.area = -s3 * (3.0 * x * x + 3.0 * y * y - 3.0 * x - s3 * y - tv + 1.0) *
             tv / (2.0 * (2.0 * tv + 1.0) * (tv + 2.0));
  return out;
}

}  // namespace pcd
