#pragma once

#include <optional>
#include <vector>

#include "pcd/geometry.hpp"

namespace pcd {

/// Expansion parameter of the central similarity proximity map, in [0, 1].
class TauParam {
 public:
  explicit TauParam(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// The proximity region of a point: either a degenerate singleton (boundary
/// points, or tau = 0) or a triangle similar to the reference triangle with
/// the query point at its center of mass.
struct ProximityRegion {
  Point2 center;
  double scale = 0.0;               // similarity ratio against the reference
  std::optional<Triangle> region;   // nullopt for the singleton case

  bool is_singleton() const { return !region.has_value(); }
};

/// 1-based index j of the edge e_j (opposite vertex v_j) whose edge region
/// contains x. Edge regions partition the triangle by the segments from the
/// center of mass to the vertices; x belongs to the region of the edge whose
/// opposite-vertex barycentric coordinate is smallest, ties to the lowest
/// index. Throws OutsideTriangle.
int edge_region(const Triangle& t, Point2 x, double tol = kBoundaryTol);

/// Construct the proximity region of x. The region triangle has vertices
/// x + s (v_i - centroid) with s = 3 tau b_j(x), where b_j is the barycentric
/// coordinate opposite the anchoring edge; this places an edge parallel to
/// e(x) at tau times the distance of x from e(x), keeps the region similar to
/// and inside the reference triangle, and centers it at x.
ProximityRegion proximity_region(const Triangle& t, Point2 x, TauParam tau,
                                 double tol = kBoundaryTol);

double region_area(const Triangle& t, Point2 x, TauParam tau,
                   double tol = kBoundaryTol);

/// Arc predicate: y inside (or on the boundary of) the region of x.
bool in_proximity_region(const Triangle& t, Point2 x, TauParam tau, Point2 y,
                         double tol = kBoundaryTol);

/// Reflected predicate: y is a catcher of x, i.e. x lies in the region of y.
bool in_gamma1(const Triangle& t, Point2 x, TauParam tau, Point2 y,
               double tol = kBoundaryTol);

/// The catcher set {x : p is inside the region of x} as explicit convex
/// polygons, one per edge region. Within the region of e_j the membership
/// conditions are affine in x, so each piece is the edge-region triangle cut
/// by three half-planes. Used by the quadrature integrands; consistency with
/// in_gamma1 is property-tested.
std::vector<Polygon> gamma1_polygons(const Triangle& t, Point2 p, TauParam tau,
                                     double tol = kBoundaryTol);

enum class Gamma1Case { R1, R2, R3, R4 };

struct Gamma1Closed {
  Gamma1Case which;
  double area;
};

/// Closed-form catcher-set area for points in the subtriangle
/// T_s = (v_1, midpoint of bottom edge, center of mass) of the standard
/// equilateral triangle, for tau strictly inside (0, 1). Verification oracle
/// only. Throws OutsideSubregion / TauBoundary.
Gamma1Closed gamma1_area_closed(Point2 x, TauParam tau);

}  // namespace pcd
