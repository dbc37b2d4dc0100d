#include "dirsparse/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dirsparse/special_functions.hpp"

namespace dirsparse {
namespace {

constexpr double kTwoOverE = 0.73575888234288464;  // 2/e

BoundResult not_applicable() { return BoundResult{}; }

// lower_bound = 1 - first - second, evaluated once so the stored fields
// reproduce it bitwise.
BoundResult from_terms(double first, double second) {
  BoundResult r;
  r.first_term = first;
  r.second_term = second;
  r.lower_bound = 1.0 - first - second;
  r.preconditions_met = true;
  return r;
}

void require_finite_positive(const char* who, double v) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(who) + ": parameter must be > 0");
}

}  // namespace

BoundResult sparsity_lower_bound_log(double log_epsilon, double alpha,
                                     double k, int n) {
  if (!std::isfinite(log_epsilon) || log_epsilon > 0.0)
    throw std::domain_error("sparsity_lower_bound: need epsilon in (0, 1]");
  require_finite_positive("sparsity_lower_bound (alpha)", alpha);
  require_finite_positive("sparsity_lower_bound (k)", k);
  if (n < 1) throw std::domain_error("sparsity_lower_bound: need n >= 1");
  if (!(k + 1.0 < 3.0 * n)) return not_applicable();
  const double first = std::exp(-n * alpha * log_epsilon - (k + 1.0) / 3.0);
  const double second = std::exp(-4.0 * (k + 1.0) / 9.0);
  return from_terms(first, second);
}

BoundResult sparsity_lower_bound(double epsilon, double alpha, double k,
                                 int n) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::domain_error("sparsity_lower_bound: need epsilon in (0, 1]");
  return sparsity_lower_bound_log(std::log(epsilon), alpha, k, n);
}

BoundResult log_sparsity_bound(int n, double c1, double c2, double c3) {
  if (n < 1) throw std::domain_error("log_sparsity_bound: need n >= 1");
  require_finite_positive("log_sparsity_bound (c1)", c1);
  require_finite_positive("log_sparsity_bound (c2)", c2);
  require_finite_positive("log_sparsity_bound (c3)", c3);
  const double ln_n = std::log(static_cast<double>(n));
  if (!(c2 * ln_n + 1.0 < 3.0 * n)) return not_applicable();
  const double first = std::exp(-1.0 / 3.0 - (c2 / 3.0 - c1 * c3) * ln_n);
  const double second = std::exp(-4.0 / 9.0 - 4.0 * c2 / 9.0 * ln_n);
  return from_terms(first, second);
}

EventBound inverse_n_bound(int n, double c0) {
  if (n < 1) throw std::domain_error("inverse_n_bound: need n >= 1");
  require_finite_positive("inverse_n_bound (c0)", c0);
  const double ln_n = std::log(static_cast<double>(n));
  EventBound out;
  out.event = SparsityEvent{n, -c0 * ln_n, 6.0 * c0 * ln_n};
  if (n < 2 || c0 < 1.0 || !(6.0 * c0 * ln_n + 1.0 < 3.0 * n)) {
    out.bound = not_applicable();
    out.chained = not_applicable();
    return out;
  }
  out.bound = from_terms(std::exp(-c0 * ln_n), 0.0);
  out.chained = log_sparsity_bound(n, 1.0, 6.0 * c0, c0);
  return out;
}

namespace {

// Shared core of the Dir(1/n^2) guarantees: count ceiling k, headline
// probability 1 - e^{2/e - (k+1)/3} - e^{-4(k+1)/9}, dominated by the
// general bound at epsilon = alpha = n^-2 because n^{2/n} <= e^{2/e}.
EventBound inverse_n_squared_core(int n, double k, bool k_ok) {
  if (n < 1)
    throw std::domain_error("inverse_n_squared_bound: need n >= 1");
  const double ln_n = std::log(static_cast<double>(n));
  EventBound out;
  out.event = SparsityEvent{n, -2.0 * ln_n, k};
  if (n < 3 || !k_ok) {
    out.bound = not_applicable();
    out.chained = not_applicable();
    return out;
  }
  out.bound = from_terms(std::exp(kTwoOverE - (k + 1.0) / 3.0),
                         std::exp(-4.0 * (k + 1.0) / 9.0));
  const double alpha = 1.0 / (static_cast<double>(n) * n);
  out.chained = sparsity_lower_bound_log(-2.0 * ln_n, alpha, k, n);
  return out;
}

}  // namespace

EventBound inverse_n_squared_bound(int n) {
  return inverse_n_squared_core(n, 5.0, true);
}

EventBound inverse_n_squared_bound(int n, double ln_g) {
  if (!std::isfinite(ln_g))
    throw std::domain_error("inverse_n_squared_bound: ln_g must be finite");
  const bool k_ok = ln_g >= 1.0 && ln_g < 3.0 * n - 1.0;
  return inverse_n_squared_core(n, ln_g, k_ok);
}

double chernoff_tail_bound(int n, double p) {
  if (n < 1) throw std::domain_error("chernoff_tail_bound: need n >= 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("chernoff_tail_bound: need p in [0, 1]");
  return std::exp(-4.0 * n * p / 3.0);
}

double marginal_exceed_prob(int n, double alpha, double epsilon) {
  if (n < 2) throw std::domain_error("marginal_exceed_prob: need n >= 2");
  require_finite_positive("marginal_exceed_prob (alpha)", alpha);
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::domain_error("marginal_exceed_prob: need epsilon in (0, 1]");
  return 1.0 - reg_inc_beta(alpha, (n - 1) * alpha, epsilon);
}

}  // namespace dirsparse
