#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcd/delaunay.hpp"
#include "pcd/inference.hpp"
#include "pcd/patterns.hpp"

namespace pcd {

/// Replicated-simulation campaign description. Replicates draw from
/// per-replicate streams of the base seed, so results are independent of the
/// worker count and bit-identical across runs.
struct ExperimentConfig {
  int n = 10;
  int replicates = 1000;
  std::vector<double> tau_grid{1.0};
  PatternSpec pattern = PatternSpec::null_csr();
  double alpha = 0.05;
  uint64_t seed = 1;
  std::vector<Point2> y_points;     // empty selects the standard equilateral
  std::optional<Direction> direction;  // default inferred from the pattern
  int threads = 0;                  // 0: PCD_THREADS env, then hardware

  void validate() const;
  std::vector<Point2> effective_y() const;
  Direction effective_direction() const;
};

int resolve_thread_count(int requested);

/// Relative densities of N independent replicates at one tau value under the
/// configured pattern. tau = 0 is allowed here and produces the degenerate
/// all-zero sample.
std::vector<double> simulate_rho_distribution(const ExperimentConfig& cfg,
                                              double tau);

struct PowerRow {
  double tau = 0.0;
  double size = 0.0;
  double size_se = 0.0;
  std::optional<double> power;
  std::optional<double> power_se;
  int replicates = 0;
  bool degenerate_regime = false;  // alternative variance positivity warning
};

struct PowerReport {
  std::vector<PowerRow> rows;
  int n = 0;
  int replicates = 0;
  double alpha = 0.05;
  uint64_t seed = 0;
  Direction direction = Direction::Segregation;
  PatternSpec pattern = PatternSpec::null_csr();
  int J = 1;
  std::vector<double> weights;
  double elapsed_seconds = 0.0;
};

/// Empirical size (null sampler) and, for alternative patterns, empirical
/// power at the asymptotic critical value, per tau in the grid.
PowerReport estimate_size_power(const ExperimentConfig& cfg);

struct ProbabilityEstimate {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  double closed_form = 0.0;
  double z() const { return se > 0.0 ? (estimate - closed_form) / se : 0.0; }
};

struct ArcProbabilityReport {
  double tau = 0.0;
  int samples = 0;
  std::vector<ProbabilityEstimate> entries;  // mu, p2n, pm, p2g, cov
  const ProbabilityEstimate& find(const std::string& name) const;
};

/// Monte Carlo verification of the closed-form arc probabilities and the
/// pair-kernel covariance from independent uniform triples.
ArcProbabilityReport verify_arc_probabilities(double tau, int samples,
                                              uint64_t seed);

struct KdeResult {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// Gaussian kernel density on a fixed 512-point grid, Silverman bandwidth.
KdeResult gaussian_kde(const std::vector<double>& samples);

}  // namespace pcd
