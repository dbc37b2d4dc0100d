#pragma once

#include <cmath>
#include <limits>

namespace dirsparse {

// A probability lower bound of the form 1 - first_term - second_term.
// May be negative (vacuous) -- still a valid statement.  When
// preconditions_met is false the guarantee does not apply at all and the
// numeric fields are NaN.
struct BoundResult {
  double lower_bound = std::numeric_limits<double>::quiet_NaN();
  double first_term = std::numeric_limits<double>::quiet_NaN();
  double second_term = std::numeric_limits<double>::quiet_NaN();
  bool preconditions_met = false;

  bool vacuous() const { return preconditions_met && lower_bound < 0.0; }
};

// The event "at most k of the n coordinates are >= epsilon".  k is a real:
// the natural instantiations use ceilings like c ln(n).  The threshold is
// kept in log form -- epsilon = n^-c underflows double well inside the
// parameter range the bounds accept.
struct SparsityEvent {
  int n = 1;
  double log_epsilon = 0.0;
  double k = 1.0;

  double epsilon() const { return std::exp(log_epsilon); }
};

// Master lower bound on Pr[at most k of n symmetric-Dirichlet(alpha)
// coordinates are >= epsilon]:
//     1 - epsilon^(-n alpha) e^{-(k+1)/3} - e^{-4(k+1)/9},
// valid when k + 1 < 3n (reported via preconditions_met).  The first term
// is assembled in log domain, so epsilon^(-n alpha) alone cannot overflow.
BoundResult sparsity_lower_bound(double epsilon, double alpha, double k,
                                 int n);
BoundResult sparsity_lower_bound_log(double log_epsilon, double alpha,
                                     double k, int n);

// The same bound specialized to alpha = c1/n, epsilon = n^-c3, k = c2 ln n,
// in its power-of-n form:
//     1 - e^{-1/3} n^{-(c2/3 - c1 c3)} - e^{-4/9} n^{-4 c2/9},
// valid when c2 ln(n) + 1 < 3n.  Algebraically identical to
// sparsity_lower_bound at those arguments (tested to 1e-12).
BoundResult log_sparsity_bound(int n, double c1, double c2, double c3);

// A headline guarantee, the event it covers, and the sharper general-formula
// instantiation it was weakened from (chained.lower_bound >= bound.lower_bound
// whenever the preconditions hold).
struct EventBound {
  BoundResult bound;
  SparsityEvent event;
  BoundResult chained;
};

// Dir(1/n): with probability >= 1 - n^-c0 at most 6 c0 ln(n) coordinates
// are >= n^-c0.  Needs n >= 2, c0 >= 1, 6 c0 ln(n) + 1 < 3n.  chained is
// log_sparsity_bound(n, 1, 6 c0, c0).
EventBound inverse_n_bound(int n, double c0);

// Dir(1/n^2): with probability >= 1 - e^{2/e-2} - e^{-8/3} = 0.6480... at
// most 5 coordinates are >= 1/n^2.  Needs n >= 3.  chained is
// sparsity_lower_bound at (1/n^2, 1/n^2, 5, n); the headline constant
// weakens it through n^{2/n} <= e^{2/e}.
EventBound inverse_n_squared_bound(int n);

// Same law, count ceiling k = ln(g) for a caller-chosen g:
//     1 - e^{2/e - 1/3} g^{-1/3} - e^{-4/9} g^{-4/9},
// needs n >= 3 and 1 <= ln g < 3n - 1.
EventBound inverse_n_squared_bound(int n, double ln_g);

// exp(-4 n p / 3): closed-form bound on Pr[Binomial(n, p) >= 3 n p] in the
// moderate-mean regime the sparsity bounds instantiate (p of order k/n).
double chernoff_tail_bound(int n, double p);

// Pr[X_1 >= epsilon] for one coordinate of a symmetric Dirichlet(alpha) on
// n >= 2 coordinates; the marginal law is Beta(alpha, (n-1) alpha).  The
// expected sparsity count is n times this.
double marginal_exceed_prob(int n, double alpha, double epsilon);

}  // namespace dirsparse
