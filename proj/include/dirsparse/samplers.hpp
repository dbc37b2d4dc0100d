#pragma once

#include <Eigen/Dense>

#include "dirsparse/rng.hpp"

namespace dirsparse {

// Log-coordinates of a point on the probability simplex:
// log_sum_exp(point) == 0 within 1e-12 and every entry <= 1e-12.
using LogSimplexPoint = Eigen::ArrayXd;

// Symmetric Dirichlet: dimension n, all shape parameters equal to alpha.
struct DirichletSpec {
  int n = 1;
  double alpha = 1.0;
};

// Natural log of one Gamma(a, 1) draw.  The result stays in log domain on
// purpose: for small shapes it routinely falls below -700 (down to ~-1e7 at
// a = 1/4096^2), where exponentiating would underflow to zero.
double sample_gamma_log(Stream& stream, double a);

// One symmetric-Dirichlet draw in log coordinates: n independent log-gamma
// draws, normalized by subtracting their log-sum-exp.
LogSimplexPoint sample_dirichlet_log(Stream& stream, const DirichletSpec& spec);

// |{i : X_i >= epsilon}| for a log-coordinate point; the comparison happens
// in log domain and is inclusive at the threshold.  The _log form takes
// ln(epsilon) directly, for thresholds like n^-c that are natural (and for
// large c n representable only) as logs.
int sparsity_count(const LogSimplexPoint& point, double epsilon);
int sparsity_count_log(const LogSimplexPoint& point, double log_epsilon);

}  // namespace dirsparse
