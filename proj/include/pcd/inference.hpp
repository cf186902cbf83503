#pragma once

#include <vector>

#include "pcd/geometry.hpp"

namespace pcd {

/// Asymptotic null mean of the relative density: tau^2 / 6.
double mu_null(double tau);

/// Asymptotic null variance of sqrt(n) * relative density:
/// tau^4 (6 tau^5 - 3 tau^4 - 25 tau^3 + tau^2 + 49 tau + 14)
///   / (45 (tau+1)(2 tau+1)(tau+2)).
double nu_null(double tau);

struct ArcProbComponents {
  double p2n;  // both targets caught by the same vertex
  double pm;   // one caught by, one catching, the same vertex
  double p2g;  // both catching the same vertex
};

/// Closed-form joint-arc probabilities; satisfy
/// nu = p2n + 2 pm + p2g - 4 mu^2.
ArcProbComponents arc_prob_components(double tau);

struct NullMoments {
  double mu;
  double nu;
};

/// Conditional moments over a triangulation with relative-area weights:
/// mu_J = mu sum w^2,  nu_J = nu sum w^3 + 4 mu^2 (sum w^3 - (sum w^2)^2).
NullMoments multi_triangle_moments(double tau,
                                   const std::vector<double>& weights);

enum class Direction { Segregation, Association, TwoSided };

struct TestResult {
  double rho = 0.0;
  int n = 0;
  int J = 1;
  double tau = 0.0;
  double mu_used = 0.0;
  double nu_used = 0.0;
  double R = 0.0;
  double p_value = 1.0;
  Direction direction = Direction::TwoSided;
  int excluded_count = 0;
};

/// Normalized statistic R = sqrt(n) (rho - mu_J) / sqrt(nu_J) and the
/// corresponding asymptotic-normal p-value (upper tail against segregation,
/// lower tail against association, doubled min-tail two-sided).
TestResult run_test(double rho, int n, double tau,
                    const std::vector<double>& weights, Direction direction,
                    int excluded_count = 0);

enum class AltKind { Segregation, Association };

/// Expected relative density under the segregation / association pattern at
/// the given epsilon, by deterministic quadrature over the carved support of
/// the standard equilateral triangle. The inner arc probability is evaluated
/// exactly by polygon clipping; the outer integral is refined until the
/// estimated absolute error is below 1e-6 (QuadratureNotConverged otherwise).
/// An optional out-parameter receives the error estimate.
double mu_alternative(double tau, double eps, AltKind kind,
                      double* err_estimate = nullptr);

/// Pitman asymptotic efficiency: the squared second epsilon-derivative of
/// the alternative mean at epsilon = 0 (one-sided differences with Richardson
/// extrapolation, base step 2e-3) over the null variance. Throws
/// NumericalInstability when the two extrapolation legs disagree by more
/// than 2%.
double pitman_efficiency(double tau, AltKind kind);

/// Asymptotic-normality region under the segregation alternative; outside it
/// the statistic is degenerate. Association is non-degenerate on the whole
/// valid range.
bool nu_s_positive(double tau, double eps);
bool nu_a_positive(double tau, double eps);

}  // namespace pcd
