#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace dirsparse {

// log(sum_i exp(v_i)) for non-empty v, by max shift with Kahan-compensated
// accumulation.  The compensation keeps the normalization residual of a
// 4096-coordinate simplex point well below 1e-12.
inline double log_sum_exp(const Eigen::Ref<const Eigen::ArrayXd>& v) {
  const double m = v.maxCoeff();
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double term = std::exp(v[i] - m);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return m + std::log(sum);
}

}  // namespace dirsparse
