#pragma once

#include <array>
#include <vector>

#include "pcd/geometry.hpp"

namespace pcd {

/// Delaunay triangulation of the reference (class-Y) points, with the convex
/// hull and per-triangle relative-area weights w_j = A(T_j) / A(hull).
///
/// Construction is incremental insertion in lexicographic order followed by
/// lawful edge flips. Cocircular ties are left unflipped, which makes the
/// result deterministic for a given input; a diagnostic counter reports how
/// many ties were seen. Duplicate input points (within tolerance) are
/// rejected.
class Triangulation {
 public:
  struct Tri {
    std::array<int, 3> v;  // ccw vertex indices into y_points
  };

  static Triangulation build(std::vector<Point2> y_points);

  const std::vector<Point2>& y_points() const { return y_; }
  const std::vector<Tri>& triangles() const { return tris_; }
  const Triangle& triangle_geometry(int j) const { return geoms_[j]; }
  int triangle_count() const { return static_cast<int>(tris_.size()); }
  const std::vector<int>& hull() const { return hull_; }
  double hull_area() const { return hull_area_; }
  const std::vector<double>& weights() const { return weights_; }
  int cocircular_ties() const { return ties_; }

 private:
  std::vector<Point2> y_;
  std::vector<Tri> tris_;
  std::vector<Triangle> geoms_;
  std::vector<int> hull_;
  std::vector<double> weights_;
  double hull_area_ = 0.0;
  int ties_ = 0;
};

inline Triangulation triangulate(std::vector<Point2> y_points) {
  return Triangulation::build(std::move(y_points));
}

struct Location {
  enum class Kind { InTriangle, OnSharedEdge, OutsideHull };
  Kind kind = Kind::OutsideHull;
  int tri = -1;        // containing triangle (lowest index when shared)
  int other_tri = -1;  // second triangle for OnSharedEdge
};

/// Point location by linear scan. Points within the boundary tolerance of a
/// shared edge resolve to the lower triangle index.
Location locate(const Triangulation& tri, Point2 p, double tol = kBoundaryTol);

/// Strict in-circumcircle predicate used by construction and by the
/// verification oracle: positive when p lies inside the circumcircle of the
/// ccw triangle (a, b, c).
double incircle(Point2 a, Point2 b, Point2 c, Point2 p);

}  // namespace pcd
