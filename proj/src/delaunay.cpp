#include "pcd/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

namespace pcd {

namespace {

struct EdgeRef {
  int tri;
  int opposite;  // vertex of tri not on the edge
};

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

double bbox_diag(const std::vector<Point2>& pts) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

double incircle(Point2 a, Point2 b, Point2 c, Point2 p) {
  const double ax = a.x - p.x, ay = a.y - p.y;
  const double bx = b.x - p.x, by = b.y - p.y;
  const double cx = c.x - p.x, cy = c.y - p.y;
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) +
         a2 * (bx * cy - by * cx);
}

Triangulation Triangulation::build(std::vector<Point2> y_points) {
  Triangulation out;
  out.y_ = std::move(y_points);
  const auto& pts = out.y_;
  const int n = static_cast<int>(pts.size());
  if (n < 3) throw TooFewPoints("triangulation needs at least 3 points");
  for (const auto& p : pts)
    if (!is_finite(p)) throw Error("non-finite reference point");

  const double diag = bbox_diag(pts);
  const double dup_tol = 1e-12 * std::max(1.0, diag);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (norm(pts[i] - pts[j]) <= dup_tol)
        throw DuplicatePoints("duplicate reference points");

  // Lexicographic insertion order; each new point is outside the hull so far.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (pts[i].x != pts[j].x) return pts[i].x < pts[j].x;
    return pts[i].y < pts[j].y;
  });

  const double area_tol = 1e-12 * diag * diag;

  // Find the first point not collinear with the leading chain.
  int k = 2;
  while (k < n && std::abs(signed_area(pts[order[0]], pts[order[1]],
                                       pts[order[k]])) <= area_tol)
    ++k;
  if (k == n) throw AllCollinear("all reference points are collinear");

  std::vector<Tri> tris;
  auto add_tri = [&](int a, int b, int c) {
    if (signed_area(pts[a], pts[b], pts[c]) < 0.0) std::swap(b, c);
    tris.push_back({{a, b, c}});
  };

  // Fan the collinear prefix (if any) against the pivot point.
  for (int i = 0; i + 1 < k; ++i)
    add_tri(order[i], order[i + 1], order[k]);

  auto boundary_edges = [&]() {
    std::vector<std::pair<int, int>> edges;
    std::map<uint64_t, int> seen;
    for (const auto& t : tris)
      for (int e = 0; e < 3; ++e)
        seen[edge_key(t.v[e], t.v[(e + 1) % 3])]++;
    for (const auto& t : tris)
      for (int e = 0; e < 3; ++e) {
        const int a = t.v[e], b = t.v[(e + 1) % 3];
        if (seen[edge_key(a, b)] == 1) edges.emplace_back(a, b);
      }
    return edges;
  };

  for (int idx = k + 1; idx < n; ++idx) {
    const int p = order[idx];
    bool connected = false;
    for (const auto& [a, b] : boundary_edges()) {
      // boundary edges run ccw; p is visible from the strict right side
      if (signed_area(pts[a], pts[b], pts[p]) < -area_tol) {
        add_tri(a, p, b);
        connected = true;
      }
    }
    if (!connected)
      throw Error("triangulation insertion failed to connect a point");
  }

  // Lawson flips until every interior edge is locally Delaunay. Cocircular
  // ties (within a scale-relative band) are left as-is.
  auto build_edge_map = [&]() {
    std::map<uint64_t, std::vector<EdgeRef>> edges;
    for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti)
      for (int e = 0; e < 3; ++e) {
        const int a = tris[ti].v[e], b = tris[ti].v[(e + 1) % 3];
        edges[edge_key(a, b)].push_back({ti, tris[ti].v[(e + 2) % 3]});
      }
    return edges;
  };
  const double tie_tol = 1e-12 * diag * diag * diag * diag;

  const int max_passes = n * n + 1000;
  int passes = 0;
  bool changed = true;
  while (changed) {
    if (++passes > max_passes)
      throw Error("edge flipping failed to terminate");
    changed = false;
    auto edges = build_edge_map();
    // flip every independent non-Delaunay edge in this pass; entries touching
    // an already-flipped triangle are stale and wait for the next pass
    std::vector<char> dirty(tris.size(), 0);
    for (const auto& [key, refs] : edges) {
      if (refs.size() != 2) continue;
      const int t1 = refs[0].tri, t2 = refs[1].tri;
      if (dirty[t1] || dirty[t2]) continue;
      const int o1 = refs[0].opposite, o2 = refs[1].opposite;
      const auto& T1 = tris[t1].v;
      const double d = incircle(pts[T1[0]], pts[T1[1]], pts[T1[2]], pts[o2]);
      if (d <= tie_tol) continue;
      const int u = static_cast<int>(key >> 32);
      const int v = static_cast<int>(key & 0xffffffffu);
      // flip (u,v) -> (o1,o2); keep only if both new triangles are proper
      if (std::abs(signed_area(pts[o1], pts[u], pts[o2])) <= area_tol) continue;
      if (std::abs(signed_area(pts[o1], pts[o2], pts[v])) <= area_tol) continue;
      tris[t1].v = {o1, u, o2};
      if (signed_area(pts[o1], pts[u], pts[o2]) < 0.0)
        std::swap(tris[t1].v[1], tris[t1].v[2]);
      tris[t2].v = {o1, o2, v};
      if (signed_area(pts[o1], pts[o2], pts[v]) < 0.0)
        std::swap(tris[t2].v[1], tris[t2].v[2]);
      dirty[t1] = dirty[t2] = 1;
      changed = true;
    }
  }

  // Count remaining cocircular ties for diagnostics.
  {
    auto edges = build_edge_map();
    for (const auto& [key, refs] : edges) {
      if (refs.size() != 2) continue;
      const auto& T1 = tris[refs[0].tri].v;
      const double d =
          incircle(pts[T1[0]], pts[T1[1]], pts[T1[2]], pts[refs[1].opposite]);
      if (std::abs(d) <= tie_tol) ++out.ties_;
    }
  }

  // Canonical triangle order: rotate each vertex triple so the smallest
  // index leads (ccw preserved), then sort. Makes locate() deterministic.
  for (auto& t : tris) {
    int lo = 0;
    for (int i = 1; i < 3; ++i)
      if (t.v[i] < t.v[lo]) lo = i;
    std::rotate(t.v.begin(), t.v.begin() + lo, t.v.end());
  }
  std::sort(tris.begin(), tris.end(),
            [](const Tri& a, const Tri& b) { return a.v < b.v; });
  out.tris_ = std::move(tris);

  double total = 0.0;
  for (const auto& t : out.tris_) {
    out.geoms_.emplace_back(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]]);
    total += out.geoms_.back().area();
  }
  out.weights_.reserve(out.tris_.size());
  for (const auto& g : out.geoms_) out.weights_.push_back(g.area() / total);

  // Hull: chain the ccw boundary edges starting from the smallest vertex.
  {
    std::map<int, int> next;
    std::map<uint64_t, int> seen;
    for (const auto& t : out.tris_)
      for (int e = 0; e < 3; ++e)
        seen[edge_key(t.v[e], t.v[(e + 1) % 3])]++;
    for (const auto& t : out.tris_)
      for (int e = 0; e < 3; ++e) {
        const int a = t.v[e], b = t.v[(e + 1) % 3];
        if (seen[edge_key(a, b)] == 1) next[a] = b;
      }
    int start = next.begin()->first;
    for (const auto& [a, b] : next) start = std::min(start, a);
    int cur = start;
    do {
      out.hull_.push_back(cur);
      cur = next.at(cur);
    } while (cur != start && out.hull_.size() <= next.size());
    Polygon hp;
    for (int i : out.hull_) hp.push_back(pts[i]);
    out.hull_area_ = polygon_area(hp);
  }

  return out;
}

Location locate(const Triangulation& tri, Point2 p, double tol) {
  Location loc;
  std::vector<int> boundary_hits;
  for (int j = 0; j < tri.triangle_count(); ++j) {
    switch (tri.triangle_geometry(j).classify(p, tol)) {
      case Containment::Interior:
        loc.kind = Location::Kind::InTriangle;
        loc.tri = j;
        return loc;
      case Containment::Boundary:
        boundary_hits.push_back(j);
        break;
      case Containment::Outside:
        break;
    }
  }
  if (boundary_hits.empty()) return loc;  // OutsideHull
  if (boundary_hits.size() == 1) {
    loc.kind = Location::Kind::InTriangle;
    loc.tri = boundary_hits[0];
    return loc;
  }
  loc.kind = Location::Kind::OnSharedEdge;
  loc.tri = boundary_hits[0];
  loc.other_tri = boundary_hits[1];
  return loc;
}

}  // namespace pcd
