#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace bhp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion. Robust for small success
/// counts (unlike the Wald interval, which collapses at 0 or n).
inline Interval wilson_interval(int64_t successes, int64_t n, double z = 1.959963984540054) {
  if (n <= 0) return {0.0, 1.0};
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / static_cast<double>(n);
  const double center = (p + z2 / (2.0 * static_cast<double>(n))) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / static_cast<double>(n) +
                    z2 / (4.0 * static_cast<double>(n) * static_cast<double>(n))) /
      denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// One standard deviation of a binomial proportion estimate.
inline double binomial_sigma(double p, int64_t n) {
  if (n <= 0) return 1.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace bhp
