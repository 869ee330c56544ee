#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace leocov {

// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of `samples` and `cdf`.
template <typename Cdf>
double ks_statistic(std::span<const double> samples, Cdf&& cdf) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// 95% normal-approximation half-width of a binomial proportion.
inline double proportion_ci_halfwidth(double p_hat, std::size_t n) {
  if (n == 0) return 0.0;
  return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

}  // namespace leocov
