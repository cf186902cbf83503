#pragma once

#include <utility>
#include <vector>

#include "pcd/delaunay.hpp"
#include "pcd/proximity.hpp"

namespace pcd {

/// Proximity catch digraph over the class-X points, conditioned on the
/// class-Y triangulation. Vertices are the X points that locate inside the
/// hull; points outside are excluded and counted. An arc i -> j exists when
/// both vertices are assigned to the same Delaunay triangle and X_j lies in
/// the proximity region of X_i. Vertices with a degenerate singleton region
/// (tau = 0, or points on a triangle boundary) emit no arcs.
struct Pcd {
  int n = 0;  // vertices kept (inside hull)
  double tau = 0.0;
  int excluded_count = 0;
  std::vector<Point2> points;                 // kept points
  std::vector<int> triangle_assignment;       // per kept vertex
  std::vector<int> original_index;            // index into the input list
  std::vector<std::pair<int, int>> arcs;      // ordered pairs (i, j)
  std::vector<std::vector<int>> out_arcs;     // sorted adjacency out-lists

  bool has_arc(int i, int j) const;
  int arc_count() const { return static_cast<int>(arcs.size()); }
};

Pcd build_pcd(const Triangulation& tri, const std::vector<Point2>& x_points,
              TauParam tau, double tol = kBoundaryTol);

/// Arc count over the maximum possible n(n-1); requires n >= 2.
double relative_density(const Pcd& d);

/// Symmetric pair kernel in {0, 1, 2}: number of arcs between i and j.
int kernel_h(const Pcd& d, int i, int j);

}  // namespace pcd
