#include "pcd/patterns.hpp"

#include <algorithm>
#include <cmath>

namespace pcd {

namespace {

constexpr double kEpsMax = 0.5773502691896257;  // sqrt(3)/3

uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void validate_eps(double eps) {
  if (!(eps > 0.0 && eps < kEpsMax))
    throw InvalidEpsilon("epsilon must lie in (0, sqrt(3)/3)");
}

struct Bary {
  double b[3];
};

Bary sample_bary(SeededRng& rng) {
  // square-root warp: uniform over the barycentric simplex
  const double r = std::sqrt(rng.next_unit());
  const double v = rng.next_unit();
  return {{1.0 - r, r * (1.0 - v), r * v}};
}

Point2 bary_point(const Triangle& t, const Bary& b) {
  return b.b[0] * t.v(0) + b.b[1] * t.v(1) + b.b[2] * t.v(2);
}

Point2 sample_in_support(SeededRng& rng, const Triangle& t,
                         const PatternSpec& spec, double scale) {
  switch (spec.kind) {
    case PatternSpec::Kind::NullCsr:
      return bary_point(t, sample_bary(rng));
    case PatternSpec::Kind::Segregation: {
      // rejection from the full triangle; acceptance 1 - 3 scale^2 + overlap
      const double cap = 1.0 - scale;
      for (;;) {
        const Bary b = sample_bary(rng);
        if (b.b[0] <= cap && b.b[1] <= cap && b.b[2] <= cap)
          return bary_point(t, b);
      }
    }
    case PatternSpec::Kind::Association: {
      // corner chosen uniformly (equal areas); a draw landing in an overlap
      // is kept only when issued from the lowest-index corner covering it
      const double thresh = 1.0 - scale;
      for (;;) {
        const int k = std::min(2, static_cast<int>(rng.next_unit() * 3.0));
        const Bary q = sample_bary(rng);
        Bary b{};
        b.b[k] = 1.0 - scale * (q.b[1] + q.b[2]);
        b.b[(k + 1) % 3] = scale * q.b[1];
        b.b[(k + 2) % 3] = scale * q.b[2];
        int lowest = -1;
        for (int m = 0; m < 3; ++m)
          if (b.b[m] >= thresh) {
            lowest = m;
            break;
          }
        if (lowest == k) return bary_point(t, b);
      }
    }
  }
  throw Error("unreachable pattern kind");
}

}  // namespace

SeededRng::SeededRng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 0x51ed2701ULL));
  const uint64_t a = splitmix64(s);
  const uint64_t b = splitmix64(s);
  engine_.seed(a ^ (b << 1));
}

PatternSpec PatternSpec::segregation(double eps) {
  validate_eps(eps);
  return {Kind::Segregation, eps};
}

PatternSpec PatternSpec::association(double eps) {
  validate_eps(eps);
  return {Kind::Association, eps};
}

double corner_scale(const PatternSpec& spec) {
  switch (spec.kind) {
    case PatternSpec::Kind::NullCsr:
      return 0.0;
    case PatternSpec::Kind::Segregation:
      return 2.0 * spec.eps / std::sqrt(3.0);
    case PatternSpec::Kind::Association:
      return 2.0 * (kEpsMax - spec.eps) / std::sqrt(3.0);
  }
  return 0.0;
}

bool corner_overlap(const PatternSpec& spec) {
  return corner_scale(spec) > 0.5;
}

std::vector<Triangle> corner_triangles(const Triangle& t, double scale) {
  std::vector<Triangle> out;
  out.reserve(3);
  for (int k = 0; k < 3; ++k) {
    const Point2 vk = t.v(k);
    out.emplace_back(vk, vk + scale * (t.v((k + 1) % 3) - vk),
                     vk + scale * (t.v((k + 2) % 3) - vk));
  }
  return out;
}

Point2 sample_uniform_triangle(SeededRng& rng, const Triangle& t) {
  return bary_point(t, sample_bary(rng));
}

std::vector<Point2> sample_pattern(SeededRng& rng, const Triangulation& tri,
                                   const PatternSpec& spec, int n) {
  if (n < 1) throw Error("sample size must be positive");
  if (spec.kind != PatternSpec::Kind::NullCsr) validate_eps(spec.eps);
  const double scale = corner_scale(spec);
  const auto& w = tri.weights();
  std::vector<double> cum(w.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    acc += w[j];
    cum[j] = acc;
  }

  std::vector<Point2> out;
  out.reserve(n);
  const bool single = tri.triangle_count() == 1;
  for (int i = 0; i < n; ++i) {
    int j = 0;
    if (!single) {
      const double u = rng.next_unit() * acc;
      j = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) -
                           cum.begin());
      j = std::min(j, tri.triangle_count() - 1);
    }
    out.push_back(
        sample_in_support(rng, tri.triangle_geometry(j), spec, scale));
  }
  return out;
}

std::vector<Point2> sample_pattern(SeededRng& rng, const Triangle& t,
                                   const PatternSpec& spec, int n) {
  if (n < 1) throw Error("sample size must be positive");
  if (spec.kind != PatternSpec::Kind::NullCsr) validate_eps(spec.eps);
  const double scale = corner_scale(spec);
  std::vector<Point2> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(sample_in_support(rng, t, spec, scale));
  return out;
}

}  // namespace pcd
