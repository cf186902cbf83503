#include "pcd/digraph.hpp"

#include <algorithm>

namespace pcd {

bool Pcd::has_arc(int i, int j) const {
  const auto& lst = out_arcs[i];
  return std::binary_search(lst.begin(), lst.end(), j);
}

Pcd build_pcd(const Triangulation& tri, const std::vector<Point2>& x_points,
              TauParam tau, double tol) {
  Pcd d;
  d.tau = tau.value();

  for (int idx = 0; idx < static_cast<int>(x_points.size()); ++idx) {
    const Location loc = locate(tri, x_points[idx], tol);
    if (loc.kind == Location::Kind::OutsideHull) {
      ++d.excluded_count;
      continue;
    }
    d.points.push_back(x_points[idx]);
    d.triangle_assignment.push_back(loc.tri);  // lowest index on shared edges
    d.original_index.push_back(idx);
  }
  d.n = static_cast<int>(d.points.size());
  if (d.n == 0)
    throw NoInteriorPoints("no X points inside the convex hull");
  d.out_arcs.assign(d.n, {});

  // Group vertices by triangle; arcs never cross triangles.
  std::vector<std::vector<int>> by_tri(tri.triangle_count());
  for (int i = 0; i < d.n; ++i) by_tri[d.triangle_assignment[i]].push_back(i);

  for (int j = 0; j < tri.triangle_count(); ++j) {
    const auto& members = by_tri[j];
    if (members.size() < 2) continue;
    const Triangle& geom = tri.triangle_geometry(j);
    for (int i : members) {
      const ProximityRegion region = proximity_region(geom, d.points[i], tau, tol);
      // singleton regions (tau = 0 or boundary points) emit no arcs
      if (region.is_singleton()) continue;
      for (int k : members) {
        if (k == i) continue;
        if (region.region->classify(d.points[k], tol) != Containment::Outside) {
          d.arcs.emplace_back(i, k);
          d.out_arcs[i].push_back(k);
        }
      }
    }
  }
  for (auto& lst : d.out_arcs) std::sort(lst.begin(), lst.end());
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

double relative_density(const Pcd& d) {
  if (d.n < 2) throw TooFewVertices("relative density needs at least 2 vertices");
  return static_cast<double>(d.arcs.size()) /
         (static_cast<double>(d.n) * (d.n - 1));
}

int kernel_h(const Pcd& d, int i, int j) {
  if (i < 0 || j < 0 || i >= d.n || j >= d.n)
    throw InvalidIndex("vertex index out of range");
  if (i == j) throw SelfPair("kernel is defined for distinct vertices");
  return (d.has_arc(i, j) ? 1 : 0) + (d.has_arc(j, i) ? 1 : 0);
}

}  // namespace pcd
