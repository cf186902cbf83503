#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace pcd {

double normal_cdf(double x);
/// Inverse of normal_cdf for p in (0, 1).
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Upper-tail p-value of a chi-square statistic with the given dof.
double chi_square_sf(double statistic, int dof);

struct SummaryMoments {
  double mean = 0.0;
  double variance = 0.0;                 // unbiased
  std::optional<double> skewness;        // standardized third moment
};

/// Mean, unbiased variance and standardized third moment; skewness is left
/// unset for (near-)constant samples. Requires at least 3 values.
SummaryMoments summarize_moments(const std::vector<double>& samples);

/// Pearson chi-square goodness-of-fit p-value for observed counts against
/// expected counts (same length; expected > 0).
double chi_square_gof_pvalue(const std::vector<double>& observed,
                             const std::vector<double>& expected);

/// Two-sample chi-square homogeneity p-value over shared bins.
double chi_square_homogeneity_pvalue(const std::vector<double>& counts_a,
                                     const std::vector<double>& counts_b);

}  // namespace pcd
