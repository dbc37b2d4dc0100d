#include "dirsparse/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirsparse/special_functions.hpp"

namespace dirsparse {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty())
    throw std::invalid_argument("quantile_sorted: empty data");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("quantile_sorted: need p in [0, 1]");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

namespace {

void check_proportion_args(int successes, int trials, double z) {
  if (trials < 1) throw std::domain_error("wilson: need trials >= 1");
  if (successes < 0 || successes > trials)
    throw std::domain_error("wilson: need 0 <= successes <= trials");
  if (!(z > 0.0) || !std::isfinite(z))
    throw std::domain_error("wilson: need z > 0");
}

}  // namespace

double wilson_lower(int successes, int trials, double z) {
  check_proportion_args(successes, trials, z);
  if (successes == 0) return 0.0;  // exact endpoint, not a rounding artifact
  const double t = trials;
  const double phat = successes / t;
  const double z2 = z * z;
  const double center = phat + z2 / (2.0 * t);
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t));
  return std::clamp((center - half) / (1.0 + z2 / t), 0.0, 1.0);
}

double wilson_upper(int successes, int trials, double z) {
  check_proportion_args(successes, trials, z);
  if (successes == trials) return 1.0;  // exact endpoint
  const double t = trials;
  const double phat = successes / t;
  const double z2 = z * z;
  const double center = phat + z2 / (2.0 * t);
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t));
  return std::clamp((center + half) / (1.0 + z2 / t), 0.0, 1.0);
}

double binomial_upper_tail(int n, double p, int m) {
  if (n < 1) throw std::domain_error("binomial_upper_tail: need n >= 1");
  if (!(p >= 0.0 && p <= 1.0) || !std::isfinite(p))
    throw std::domain_error("binomial_upper_tail: need p in [0, 1]");
  if (m <= 0) return 1.0;
  if (m > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_fact_n = log_gamma(n + 1.0);
  // Terms span many orders of magnitude, so sum the exponentials with
  // compensation rather than shifting into log space.
  double sum = 0.0, comp = 0.0;
  for (int j = m; j <= n; ++j) {
    const double log_term = log_fact_n - log_gamma(j + 1.0) -
                            log_gamma(n - j + 1.0) + j * log_p +
                            (n - j) * log_q;
    const double y = std::exp(log_term) - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return std::min(sum, 1.0);
}

int binomial_event_threshold(int n, double p) {
  if (n < 1) throw std::domain_error("binomial_event_threshold: need n >= 1");
  if (!(p >= 0.0 && p <= 1.0) || !std::isfinite(p))
    throw std::domain_error("binomial_event_threshold: need p in [0, 1]");
  const double target = 3.0 * n * p;
  const double nearest = std::round(target);
  // 3*n*p is often an exact value computed through inexact doubles
  // (3*30*0.1 = 9.000000000000002); treat a few-ulp gap as equality so the
  // ceiling does not overshoot by a whole count.
  constexpr double kSnap = 64 * 2.220446049250313e-16;
  int m;
  if (std::fabs(target - nearest) <= kSnap * std::max(1.0, target))
    m = static_cast<int>(nearest);
  else
    m = static_cast<int>(std::ceil(target));
  // For p > 0 no integer below 1 satisfies m >= 3np.
  return p > 0.0 ? std::max(m, 1) : m;
}

}  // namespace dirsparse
