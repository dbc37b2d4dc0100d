#include "dirsparse/samplers.hpp"

#include <cmath>
#include <stdexcept>

#include "dirsparse/numeric.hpp"

namespace dirsparse {
namespace {

// Marsaglia-Tsang accept-reject for shape a >= 1 (squeeze step first, exact
// log test second).  Rejection rate is uniformly small across shapes.
double gamma_log_shape_ge1(Stream& stream, double a) {
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = stream.standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform_open01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
      return std::log(d * v);
  }
}

}  // namespace

double sample_gamma_log(Stream& stream, double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("sample_gamma_log: need a > 0");
  if (a >= 1.0) return gamma_log_shape_ge1(stream, a);
  // Boost construction Y = Y' U^{1/a} with Y' ~ Gamma(a+1): in logs the
  // second factor is ln(U)/a, of order -1/a for tiny shapes, so the sum must
  // never leave log domain.
  const double log_boost = std::log(stream.uniform_open01()) / a;
  return gamma_log_shape_ge1(stream, a + 1.0) + log_boost;
}

LogSimplexPoint sample_dirichlet_log(Stream& stream,
                                     const DirichletSpec& spec) {
  if (spec.n < 1) throw std::domain_error("sample_dirichlet_log: need n >= 1");
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha))
    throw std::domain_error("sample_dirichlet_log: need alpha > 0");
  LogSimplexPoint logs(spec.n);
  for (int i = 0; i < spec.n; ++i)
    logs[i] = sample_gamma_log(stream, spec.alpha);
  return logs - log_sum_exp(logs);
}

int sparsity_count(const LogSimplexPoint& point, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::domain_error("sparsity_count: need epsilon in (0, 1]");
  return sparsity_count_log(point, std::log(epsilon));
}

int sparsity_count_log(const LogSimplexPoint& point, double log_epsilon) {
  if (!(log_epsilon <= 0.0))
    throw std::domain_error("sparsity_count_log: need log_epsilon <= 0");
  return static_cast<int>((point >= log_epsilon).count());
}

}  // namespace dirsparse
