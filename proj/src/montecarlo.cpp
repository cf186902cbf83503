#include "pcd/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "pcd/digraph.hpp"
#include "pcd/stats.hpp"

namespace pcd {

namespace {

std::vector<Point2> standard_equilateral_points() {
  const Triangle& t = standard_equilateral();
  return {t.v(0), t.v(1), t.v(2)};
}

// Deterministic parallel map over replicate indices: workers pull indices
// from a shared counter and write into preallocated slots, so the reduction
// order never depends on scheduling.
template <typename F>
void parallel_for_replicates(int count, int threads, F&& body) {
  if (threads <= 1) {
    for (int r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= count) return;
        body(r);
      }
    });
  for (auto& th : pool) th.join();
}

double binomial_se(double p_hat, int n) {
  return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / n);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (replicates < 1) throw Error("replicates must be >= 1");
  if (n < 2) throw Error("sample size must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
  if (tau_grid.empty()) throw Error("tau grid must be non-empty");
  for (double t : tau_grid)
    if (!(t >= 0.0 && t <= 1.0)) throw TauOutOfRange("tau must lie in [0, 1]");
}

std::vector<Point2> ExperimentConfig::effective_y() const {
  return y_points.empty() ? standard_equilateral_points() : y_points;
}

Direction ExperimentConfig::effective_direction() const {
  if (direction) return *direction;
  switch (pattern.kind) {
    case PatternSpec::Kind::Association:
      return Direction::Association;
    case PatternSpec::Kind::Segregation:
    case PatternSpec::Kind::NullCsr:
      return Direction::Segregation;
  }
  return Direction::Segregation;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PCD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<double> simulate_rho_distribution(const ExperimentConfig& cfg,
                                              double tau) {
  cfg.validate();
  if (!(tau >= 0.0 && tau <= 1.0))
    throw TauOutOfRange("tau must lie in [0, 1]");
  const Triangulation tri = triangulate(cfg.effective_y());
  const TauParam tp(tau);
  std::vector<double> rhos(cfg.replicates, 0.0);
  const int threads = resolve_thread_count(cfg.threads);
  parallel_for_replicates(cfg.replicates, threads, [&](int r) {
    SeededRng rng(cfg.seed, static_cast<uint64_t>(r));
    const auto pts = sample_pattern(rng, tri, cfg.pattern, cfg.n);
    const Pcd d = build_pcd(tri, pts, tp);
    rhos[r] = relative_density(d);
  });
  return rhos;
}

PowerReport estimate_size_power(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Triangulation tri = triangulate(cfg.effective_y());
  const bool has_alt = cfg.pattern.kind != PatternSpec::Kind::NullCsr;
  const Direction dir = cfg.effective_direction();
  const double zcrit = normal_quantile(1.0 - cfg.alpha);

  const std::size_t grid = cfg.tau_grid.size();
  for (double tau : cfg.tau_grid) {
    const NullMoments m = multi_triangle_moments(tau, tri.weights());
    if (!(m.nu > 0.0))
      throw DegenerateVariance("null variance is zero on the tau grid");
  }

  // per replicate, per tau: rho under the null and under the alternative
  std::vector<double> rho_null(cfg.replicates * grid, 0.0);
  std::vector<double> rho_alt(has_alt ? cfg.replicates * grid : 0, 0.0);

  const int threads = resolve_thread_count(cfg.threads);
  parallel_for_replicates(cfg.replicates, threads, [&](int r) {
    SeededRng rng_null(cfg.seed, 2 * static_cast<uint64_t>(r));
    const auto null_pts =
        sample_pattern(rng_null, tri, PatternSpec::null_csr(), cfg.n);
    for (std::size_t g = 0; g < grid; ++g) {
      const Pcd d = build_pcd(tri, null_pts, TauParam(cfg.tau_grid[g]));
      rho_null[r * grid + g] = relative_density(d);
    }
    if (has_alt) {
      SeededRng rng_alt(cfg.seed, 2 * static_cast<uint64_t>(r) + 1);
      const auto alt_pts = sample_pattern(rng_alt, tri, cfg.pattern, cfg.n);
      for (std::size_t g = 0; g < grid; ++g) {
        const Pcd d = build_pcd(tri, alt_pts, TauParam(cfg.tau_grid[g]));
        rho_alt[r * grid + g] = relative_density(d);
      }
    }
  });

  PowerReport report;
  report.n = cfg.n;
  report.replicates = cfg.replicates;
  report.alpha = cfg.alpha;
  report.seed = cfg.seed;
  report.direction = dir;
  report.pattern = cfg.pattern;
  report.J = tri.triangle_count();
  report.weights = tri.weights();

  for (std::size_t g = 0; g < grid; ++g) {
    const double tau = cfg.tau_grid[g];
    const NullMoments m = multi_triangle_moments(tau, tri.weights());
    const double root_n = std::sqrt(static_cast<double>(cfg.n));
    const double root_nu = std::sqrt(m.nu);
    auto rejects = [&](double rho) {
      const double R = root_n * (rho - m.mu) / root_nu;
      return dir == Direction::Association ? (R < -zcrit) : (R > zcrit);
    };
    PowerRow row;
    row.tau = tau;
    row.replicates = cfg.replicates;
    int cnt = 0;
    for (int r = 0; r < cfg.replicates; ++r)
      if (rejects(rho_null[r * grid + g])) ++cnt;
    row.size = static_cast<double>(cnt) / cfg.replicates;
    row.size_se = binomial_se(row.size, cfg.replicates);
    if (has_alt) {
      int pcnt = 0;
      for (int r = 0; r < cfg.replicates; ++r)
        if (rejects(rho_alt[r * grid + g])) ++pcnt;
      row.power = static_cast<double>(pcnt) / cfg.replicates;
      row.power_se = binomial_se(*row.power, cfg.replicates);
      if (cfg.pattern.kind == PatternSpec::Kind::Segregation)
        row.degenerate_regime = !nu_s_positive(tau, cfg.pattern.eps);
      else
        row.degenerate_regime = !nu_a_positive(tau, cfg.pattern.eps);
    }
    report.rows.push_back(std::move(row));
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

const ProbabilityEstimate& ArcProbabilityReport::find(
    const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw Error("unknown probability entry: " + name);
}

ArcProbabilityReport verify_arc_probabilities(double tau, int samples,
                                              uint64_t seed) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw TauOutOfRange("tau must lie in (0, 1]");
  if (samples < 100) throw TooFewSamples("need at least 100 triples");
  const Triangle& T = standard_equilateral();
  const TauParam tp(tau);

  long long c12 = 0, c2n = 0, cm = 0, c2g = 0;
  double sum_h12 = 0.0, sum_h13 = 0.0, sum_prod = 0.0;
  const int batches = 100;
  std::vector<double> batch_prod(batches, 0.0), batch_h12(batches, 0.0),
      batch_h13(batches, 0.0);
  std::vector<int> batch_n(batches, 0);

  SeededRng rng(seed, 0);
  for (int i = 0; i < samples; ++i) {
    const Point2 x1 = sample_uniform_triangle(rng, T);
    const Point2 x2 = sample_uniform_triangle(rng, T);
    const Point2 x3 = sample_uniform_triangle(rng, T);
    const ProximityRegion r1 = proximity_region(T, x1, tp);
    const ProximityRegion r2 = proximity_region(T, x2, tp);
    const ProximityRegion r3 = proximity_region(T, x3, tp);
    auto contains = [](const ProximityRegion& r, Point2 p) {
      if (r.is_singleton()) return p == r.center;
      return r.region->classify(p) != Containment::Outside;
    };
    const int a12 = contains(r1, x2), a21 = contains(r2, x1);
    const int a13 = contains(r1, x3), a31 = contains(r3, x1);
    c12 += a12;
    c2n += a12 & a13;
    cm += a12 & a31;
    c2g += a21 & a31;
    const double h12 = a12 + a21, h13 = a13 + a31;
    sum_h12 += h12;
    sum_h13 += h13;
    sum_prod += h12 * h13;
    const int b = i % batches;
    batch_prod[b] += h12 * h13;
    batch_h12[b] += h12;
    batch_h13[b] += h13;
    batch_n[b] += 1;
  }

  const double N = static_cast<double>(samples);
  const ArcProbComponents cf = arc_prob_components(tau);
  ArcProbabilityReport rep;
  rep.tau = tau;
  rep.samples = samples;

  auto add_prob = [&](const std::string& name, long long count, double closed) {
    const double p = count / N;
    rep.entries.push_back({name, p, binomial_se(p, samples), closed});
  };
  add_prob("mu", c12, mu_null(tau));
  add_prob("p2n", c2n, cf.p2n);
  add_prob("pm", cm, cf.pm);
  add_prob("p2g", c2g, cf.p2g);

  // covariance of the pair kernel via batch means
  const double cov_hat = sum_prod / N - (sum_h12 / N) * (sum_h13 / N);
  double bvar = 0.0;
  int used = 0;
  std::vector<double> bcov(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    if (batch_n[b] == 0) continue;
    const double nb = batch_n[b];
    bcov[used++] =
        batch_prod[b] / nb - (batch_h12[b] / nb) * (batch_h13[b] / nb);
  }
  double bmean = 0.0;
  for (int b = 0; b < used; ++b) bmean += bcov[b];
  bmean /= used;
  for (int b = 0; b < used; ++b)
    bvar += (bcov[b] - bmean) * (bcov[b] - bmean);
  bvar /= (used - 1);
  rep.entries.push_back(
      {"cov", cov_hat, std::sqrt(bvar / used), nu_null(tau)});
  return rep;
}

KdeResult gaussian_kde(const std::vector<double>& samples) {
  if (samples.size() < 3)
    throw TooFewSamples("kernel density needs at least 3 samples");
  const SummaryMoments m = summarize_moments(samples);
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double iqr =
      sorted[static_cast<std::size_t>(0.75 * (n - 1))] -
      sorted[static_cast<std::size_t>(0.25 * (n - 1))];
  const double sd = std::sqrt(m.variance);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = std::max(sd, 1e-12);
  double bw = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  bw = std::max(bw, 1e-12);

  KdeResult out;
  out.bandwidth = bw;
  const double lo = sorted.front() - 3.0 * bw;
  const double hi = sorted.back() + 3.0 * bw;
  const int grid_n = 512;
  out.grid.resize(grid_n);
  out.density.resize(grid_n);
  const double step = (hi - lo) / (grid_n - 1);
  const double norm = 1.0 / (n * bw * std::sqrt(2.0 * M_PI));
  for (int i = 0; i < grid_n; ++i) {
    const double x = lo + i * step;
    double acc = 0.0;
    for (double s : sorted) {
      const double u = (x - s) / bw;
      acc += std::exp(-0.5 * u * u);
    }
    out.grid[i] = x;
    out.density[i] = acc * norm;
  }
  return out;
}

}  // namespace pcd
