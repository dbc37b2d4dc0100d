#pragma once

#include <stdexcept>

namespace dirsparse {

// Thrown when an iterative scheme exhausts its iteration budget or the
// sought value is not representable in double; distinct from the
// std::domain_error raised for invalid inputs.
struct no_convergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ln Gamma(x), x > 0.  Thin wrapper over the C library's lgamma (thread-safe
// variant where available); accurate to a few ulp across [1e-9, 1e6].
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
// a > 0, x >= 0.  Power series for x < a + 1, Lentz continued fraction
// otherwise; the prefactor x^a e^-x / Gamma(a) is assembled in log space so
// shapes down to ~1e-9 stay finite.  Result lies in [0, 1] by construction.
double reg_lower_inc_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed on
// whichever side of x = a + 1 converges directly, so neither tail is lost
// to cancellation.
double reg_upper_inc_gamma(double a, double x);

// The threshold c >= 0 with Q(a, c) = p, i.e. Pr[Gamma(a, 1) >= c] = p.
// Bracket by doubling, then bisection until |Q(a, c) - p| <= 1e-10.
// Throws no_convergence when c is too small to represent: for tiny shapes
// c ~ exp(-p/a - gamma_E), which underflows double once p/a exceeds ~700.
double inverse_upper_tail(double a, double p);

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction,
// switching to 1 - I_{1-x}(b, a) for x >= (a+1)/(a+b+2) so the fraction
// always converges fast.
double reg_inc_beta(double a, double b, double x);

}  // namespace dirsparse
