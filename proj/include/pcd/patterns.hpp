#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pcd/delaunay.hpp"
#include "pcd/geometry.hpp"

namespace pcd {

/// Deterministic stream-addressable generator. The same (seed, stream) pair
/// reproduces the same sequence on every platform and thread count: the
/// engine is the standard-specified mt19937_64 and doubles are produced from
/// raw engine output, bypassing the implementation-defined distributions.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed, uint64_t stream = 0);

  uint64_t next_u64() { return engine_(); }
  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return (engine_() >> 11) * 0x1.0p-53; }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
  uint64_t stream_;
};

struct PatternSpec {
  enum class Kind { NullCsr, Segregation, Association };
  Kind kind = Kind::NullCsr;
  double eps = 0.0;  // on the standard equilateral scale, in (0, sqrt(3)/3)

  static PatternSpec null_csr() { return {Kind::NullCsr, 0.0}; }
  static PatternSpec segregation(double eps);
  static PatternSpec association(double eps);
};

/// Similarity ratio of the carved corner triangles relative to the parent
/// triangle. Segregation removes corners of this scale; association keeps
/// only corners of the complementary scale. The area fraction carved at each
/// vertex is the square of the returned ratio.
double corner_scale(const PatternSpec& spec);

/// True when the three corner triangles of the pattern overlap; sampling
/// stays exact (rejection handles the overlap) but callers may want to warn.
bool corner_overlap(const PatternSpec& spec);

/// The three corner triangles of t at a given similarity ratio.
std::vector<Triangle> corner_triangles(const Triangle& t, double scale);

Point2 sample_uniform_triangle(SeededRng& rng, const Triangle& t);

/// n independent draws from the pattern over the triangulation: triangles
/// are chosen with probability w_j, then the point is drawn from the
/// per-triangle support (the whole triangle, the triangle minus its corner
/// triangles, or the union of corner triangles).
std::vector<Point2> sample_pattern(SeededRng& rng, const Triangulation& tri,
                                   const PatternSpec& spec, int n);

/// Single-triangle variant used by the equilateral-reference harnesses.
std::vector<Point2> sample_pattern(SeededRng& rng, const Triangle& t,
                                   const PatternSpec& spec, int n);

}  // namespace pcd
