#include "pcd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcd/errors.hpp"

namespace pcd {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error("normal quantile requires p in (0, 1)");
  // Acklam's rational approximation, then one Halley refinement.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

namespace {

double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw Error("gamma_p requires x >= 0, a > 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) throw Error("chi-square needs positive dof");
  if (statistic <= 0.0) return 1.0;
  return 1.0 - gamma_p(0.5 * dof, 0.5 * statistic);
}

SummaryMoments summarize_moments(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw TooFewSamples("moment summary needs at least 3 samples");
  SummaryMoments out;
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  out.mean = mean;
  out.variance = m2 / static_cast<double>(n - 1);
  const double m2n = m2 / static_cast<double>(n);
  if (m2n > 0.0 && std::sqrt(m2n) > 1e-14 * std::max(1.0, std::abs(mean)))
    out.skewness = (m3 / static_cast<double>(n)) / std::pow(m2n, 1.5);
  return out;
}

double chi_square_gof_pvalue(const std::vector<double>& observed,
                             const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw Error("chi-square inputs must be same-length and non-empty");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw Error("expected count must be positive");
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return chi_square_sf(stat, static_cast<int>(observed.size()) - 1);
}

double chi_square_homogeneity_pvalue(const std::vector<double>& counts_a,
                                     const std::vector<double>& counts_b) {
  if (counts_a.size() != counts_b.size() || counts_a.empty())
    throw Error("homogeneity inputs must be same-length and non-empty");
  const std::size_t k = counts_a.size();
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    na += counts_a[i];
    nb += counts_b[i];
  }
  double stat = 0.0;
  int dof = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double tot = counts_a[i] + counts_b[i];
    if (tot <= 0.0) continue;
    const double ea = tot * na / (na + nb);
    const double eb = tot * nb / (na + nb);
    stat += (counts_a[i] - ea) * (counts_a[i] - ea) / ea +
            (counts_b[i] - eb) * (counts_b[i] - eb) / eb;
    ++dof;
  }
  return chi_square_sf(stat, std::max(1, dof - 1));
}

}  // namespace pcd
