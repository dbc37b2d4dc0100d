#pragma once

#include <span>

namespace dirsparse {

// Standard normal quantiles used by the 99% confidence machinery.
inline constexpr double kZ99OneSided = 2.3263478740408411;
inline constexpr double kZ99TwoSided = 2.5758293035489008;

// Quantile of sorted data by linear interpolation between closest ranks
// (the default convention in most statistical software).  p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// One-sided score (Wilson) confidence limits for a binomial proportion with
// `successes` out of `trials` and normal quantile z.  Clamped to [0, 1].
double wilson_lower(int successes, int trials, double z);
double wilson_upper(int successes, int trials, double z);

// Pr[Binomial(n, p) >= m] by direct summation of log-domain terms.
// Exact up to rounding; m <= 0 gives 1, m > n gives 0.
double binomial_upper_tail(int n, double p, int m);

// Smallest integer count m with m >= 3*n*p.  When 3*n*p lands within a few
// ulps of an integer the product is snapped there first, so thresholds like
// 3*30*0.1 resolve to 9 rather than 10.
int binomial_event_threshold(int n, double p);

}  // namespace dirsparse
