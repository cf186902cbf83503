#include <doctest.h>

#include <cmath>
#include <set>

#include "pcd/delaunay.hpp"
#include "pcd/patterns.hpp"

using namespace pcd;

namespace {

std::vector<Point2> random_points(int n, uint64_t seed, double span = 1.0) {
  SeededRng rng(seed);
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i)
    pts.push_back({span * rng.next_unit(), span * rng.next_unit()});
  return pts;
}

}  // namespace

TEST_SUITE("delaunay") {

TEST_CASE("three points give a single triangle with unit weight") {
  const Triangulation tri = triangulate({{0, 0}, {1, 0}, {0.3, 0.8}});
  CHECK(tri.triangle_count() == 1);
  REQUIRE(tri.weights().size() == 1);
  CHECK(tri.weights()[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unit square splits into two equal triangles") {
  const Triangulation tri = triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  REQUIRE(tri.triangle_count() == 2);
  CHECK(tri.weights()[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tri.weights()[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tri.hull_area() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty-circumcircle property against a brute-force oracle") {
  for (uint64_t seed : {21u, 22u, 23u}) {
    const auto pts = random_points(10, seed);
    const Triangulation tri = triangulate(pts);
    for (int j = 0; j < tri.triangle_count(); ++j) {
      const auto& tv = tri.triangles()[j].v;
      const Triangle& g = tri.triangle_geometry(j);
      // tolerance relative to the fourth power of the circumscale
      const double scale = std::sqrt(g.area());
      for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
        if (p == tv[0] || p == tv[1] || p == tv[2]) continue;
        const double d = incircle(pts[tv[0]], pts[tv[1]], pts[tv[2]], pts[p]);
        CHECK(d <= 1e-9 * std::max(1.0, scale * scale * scale * scale));
      }
    }
  }
}

TEST_CASE("triangles tile the hull") {
  const auto pts = random_points(30, 24);
  const Triangulation tri = triangulate(pts);
  double total = 0.0;
  for (int j = 0; j < tri.triangle_count(); ++j)
    total += tri.triangle_geometry(j).area();
  CHECK(total == doctest::Approx(tri.hull_area()).epsilon(1e-9));
}

TEST_CASE("weights sum to one and satisfy the cubic-square inequality") {
  for (uint64_t seed : {25u, 26u}) {
    const Triangulation tri = triangulate(random_points(20, seed));
    double s1 = 0, s2 = 0, s3 = 0;
    for (double w : tri.weights()) {
      CHECK(w > 0.0);
      s1 += w;
      s2 += w * w;
      s3 += w * w * w;
    }
    CHECK(std::abs(s1 - 1.0) <= 1e-12);
    CHECK(s3 >= s2 * s2 - 1e-15);
  }
}

TEST_CASE("locate examples") {
  const Triangulation tri = triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Location in0 = locate(tri, tri.triangle_geometry(0).centroid());
  CHECK(in0.kind == Location::Kind::InTriangle);
  CHECK(in0.tri == 0);
  const Location out = locate(tri, {5, 5});
  CHECK(out.kind == Location::Kind::OutsideHull);
  // midpoint of the shared diagonal resolves to the lower triangle index
  const Location shared = locate(tri, {0.5, 0.5});
  CHECK(shared.kind == Location::Kind::OnSharedEdge);
  CHECK(shared.tri == 0);
  CHECK(shared.other_tri == 1);
}

TEST_CASE("locate consistency for uniform points in the hull") {
  const auto pts = random_points(15, 27);
  const Triangulation tri = triangulate(pts);
  SeededRng rng(28);
  int located = 0;
  for (int i = 0; i < 10000; ++i) {
    // sample inside a random triangle so the point is inside the hull
    const int j = static_cast<int>(rng.next_unit() * tri.triangle_count());
    const Point2 p = sample_uniform_triangle(
        rng, tri.triangle_geometry(std::min(j, tri.triangle_count() - 1)));
    const Location loc = locate(tri, p);
    REQUIRE(loc.kind != Location::Kind::OutsideHull);
    const Containment c = tri.triangle_geometry(loc.tri).classify(p);
    CHECK(c != Containment::Outside);
    ++located;
  }
  CHECK(located == 10000);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(triangulate({{0, 0}, {1, 0}}), TooFewPoints);
  CHECK_THROWS_AS(triangulate({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), AllCollinear);
  CHECK_THROWS_AS(triangulate({{0, 0}, {1, 0}, {0, 1}, {0, 0}}),
                  DuplicatePoints);
  CHECK_THROWS_AS(triangulate({{0, 0}, {1, 0}, {0, 1}, {1e-14, 1e-14}}),
                  DuplicatePoints);
}

TEST_CASE("construction is deterministic") {
  const auto pts = random_points(40, 29);
  const Triangulation a = triangulate(pts);
  const Triangulation b = triangulate(pts);
  REQUIRE(a.triangle_count() == b.triangle_count());
  for (int j = 0; j < a.triangle_count(); ++j)
    CHECK(a.triangles()[j].v == b.triangles()[j].v);
}

TEST_CASE("collinear prefix is handled") {
  // first three points in lexicographic order are collinear
  const Triangulation tri =
      triangulate({{0, 0}, {0, 1}, {0, 2}, {1, 0.5}, {1.5, 1.5}});
  CHECK(tri.triangle_count() >= 3);
  double total = 0.0;
  for (int j = 0; j < tri.triangle_count(); ++j)
    total += tri.triangle_geometry(j).area();
  CHECK(total == doctest::Approx(tri.hull_area()).epsilon(1e-9));
}

TEST_CASE("cocircular tie diagnostics on the square") {
  const Triangulation tri = triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(tri.cocircular_ties() == 1);  // the diagonal of a square is a tie
}

}  // TEST_SUITE
