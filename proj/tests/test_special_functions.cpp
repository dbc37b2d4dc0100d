#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dirsparse/special_functions.hpp"

#if __has_include(<boost/math/special_functions/gamma.hpp>)
#define HAVE_BOOST_MATH 1
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace dirsparse;

// Reference decimals below were computed independently with 40-digit
// arithmetic and rounded to shortest-representable doubles.

TEST_CASE("log_gamma against high-precision references") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
  CHECK(log_gamma(1e-9) == doctest::Approx(20.723265836369195).epsilon(1e-14));
  CHECK(log_gamma(1e-6) == doctest::Approx(13.815509980749432).epsilon(1e-14));
  CHECK(log_gamma(1e-3) == doctest::Approx(6.9071788853838537).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470009).epsilon(1e-14));
  CHECK(log_gamma(1.5) == doctest::Approx(-0.12078223763524522).epsilon(1e-13));
  CHECK(log_gamma(10.0) == doctest::Approx(12.80182748008147).epsilon(1e-14));
  CHECK(log_gamma(1000.0) == doctest::Approx(5905.2204232091812).epsilon(1e-14));
  CHECK(log_gamma(1e6) == doctest::Approx(12815504.569147612).epsilon(1e-14));
  // Recurrence ln Gamma(x+1) = ln Gamma(x) + ln x across scales.
  for (double x : {1e-8, 1e-4, 0.3, 2.7, 41.0, 9000.0}) {
    CHECK(log_gamma(x + 1.0) ==
          doctest::Approx(log_gamma(x) + std::log(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("regularized incomplete gamma against references") {
  CHECK(reg_lower_inc_gamma(1e-9, 1.0) ==
        doctest::Approx(0.99999999978061607).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(1e-6, 1e-300) ==
        doctest::Approx(0.99931003981901063).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(0.5, 2.0) ==
        doctest::Approx(0.95449973610364159).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(2.0, 3.0) ==
        doctest::Approx(0.80085172652854423).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(10.0, 10.0) ==
        doctest::Approx(0.54207028552814779).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(100.0, 90.0) ==
        doctest::Approx(0.15822098918643017).epsilon(1e-12));
  CHECK(reg_lower_inc_gamma(1e4, 1e4) ==
        doctest::Approx(0.5013298083399552).epsilon(1e-11));

  CHECK(reg_upper_inc_gamma(10.0, 10.0) ==
        doctest::Approx(0.45792971447185221).epsilon(1e-12));
  CHECK(reg_upper_inc_gamma(0.5, 50.0) ==
        doctest::Approx(1.5239706048321052e-23).epsilon(1e-12));
  CHECK(reg_upper_inc_gamma(5.0, 30.0) ==
        doctest::Approx(3.624300952061488e-9).epsilon(1e-12));
  CHECK(reg_upper_inc_gamma(0.5, 1.0) ==
        doctest::Approx(0.15729920705028513).epsilon(1e-12));
  CHECK(reg_upper_inc_gamma(100.0, 120.0) ==
        doctest::Approx(0.027863739890520661).epsilon(1e-12));

  // Boundary and saturation.
  CHECK(reg_lower_inc_gamma(0.5, 0.0) == 0.0);
  CHECK(reg_upper_inc_gamma(0.5, 0.0) == 1.0);
  CHECK(reg_lower_inc_gamma(0.5, 50.0) == 1.0);
}

TEST_CASE("incomplete gamma closed-form identities") {
  // P(1, x) is the exponential CDF.
  for (double x : {1e-8, 0.1, 1.0, 5.0, 30.0}) {
    CHECK(reg_lower_inc_gamma(1.0, x) ==
          doctest::Approx(-std::expm1(-x)).epsilon(1e-13));
  }
  CHECK(reg_lower_inc_gamma(1.0, std::log(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // P(1/2, t^2) = erf(t).
  for (double t : {0.3, 1.0, 2.0}) {
    CHECK(reg_lower_inc_gamma(0.5, t * t) ==
          doctest::Approx(std::erf(t)).epsilon(1e-13));
  }
  // Complementarity across both evaluation branches.
  for (double a : {1e-7, 0.03, 0.8, 4.0, 77.0}) {
    for (double x : {0.05, 0.9, 3.0, 20.0}) {
      double s = reg_lower_inc_gamma(a, x) + reg_upper_inc_gamma(a, x);
      CHECK(s == doctest::Approx(1.0).epsilon(3e-15));
    }
  }
  // Monotone in x, and in a the lower function decreases.
  CHECK(reg_lower_inc_gamma(0.7, 0.4) < reg_lower_inc_gamma(0.7, 0.5));
  CHECK(reg_lower_inc_gamma(0.7, 0.4) > reg_lower_inc_gamma(0.9, 0.4));
  CHECK_THROWS_AS(reg_lower_inc_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_lower_inc_gamma(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(reg_upper_inc_gamma(-2.0, 1.0), std::domain_error);
}

TEST_CASE("inverse upper tail round-trips") {
  // Contract: |Q(a, c) - p| <= 1e-10 at the returned c.
  const double as[] = {1e-3, 0.25, 0.5, 1.0, 2.0, 10.0};
  const double ps[] = {1e-4, 0.01, 0.35, 0.5, 0.9, 0.999};
  for (double a : as) {
    for (double p : ps) {
      if (p / a > 500.0) continue;  // threshold would underflow double
      double c = inverse_upper_tail(a, p);
      CHECK(c > 0.0);
      CHECK(std::fabs(reg_upper_inc_gamma(a, c) - p) <= 1e-10);
    }
  }
  // Shape 1: Q(1, c) = exp(-c), so c = -ln p.  The stopping rule
  // |Q - p| <= 1e-10 allows |dc| up to 1e-10/p, hence the loose epsilon.
  for (double p : {0.9, 0.5, 0.123, 1e-3}) {
    double c = inverse_upper_tail(1.0, p);
    CHECK(std::fabs(std::exp(-c) - p) <= 1e-10);
    CHECK(c == doctest::Approx(-std::log(p)).epsilon(1e-7));
  }
  CHECK(inverse_upper_tail(0.25, 0.35) ==
        doctest::Approx(0.13375913400343231).epsilon(1e-8));
  // Tiny shape: c ~ exp(-p/a - gamma_E) as long as that stays representable.
  {
    double c = inverse_upper_tail(1e-6, 1e-4);
    CHECK(std::log(c) == doctest::Approx(-100.58221517579324).epsilon(1e-5));
    CHECK(std::fabs(reg_upper_inc_gamma(1e-6, c) - 1e-4) <= 1e-10);
  }
}

TEST_CASE("inverse upper tail error contract") {
  CHECK_THROWS_AS(inverse_upper_tail(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(inverse_upper_tail(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(inverse_upper_tail(-1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(inverse_upper_tail(0.5, std::nan("")), std::domain_error);
  // p/a ~ 5e5: the true threshold is exp(-5e5), far below double range.
  // Must surface as the convergence error, not a domain error or a zero.
  CHECK_THROWS_AS(inverse_upper_tail(1e-6, 0.5), no_convergence);
  CHECK_THROWS_AS(inverse_upper_tail(1e-9, 0.01), no_convergence);
}

TEST_CASE("regularized incomplete beta against references") {
  CHECK(reg_inc_beta(9.0, 22.0, 0.1) ==
        doctest::Approx(0.0020198290052582996).epsilon(1e-12));
  CHECK(reg_inc_beta(2.0, 5.0, 0.3) ==
        doctest::Approx(0.579825).epsilon(1e-13));
  CHECK(reg_inc_beta(0.5, 0.5, 1e-3) ==
        doctest::Approx(0.020135041633377491).epsilon(1e-12));
  CHECK(reg_inc_beta(10.0, 0.1, 0.999) ==
        doctest::Approx(0.34033333977917497).epsilon(1e-11));
  CHECK(reg_inc_beta(1.0, 7.0, 0.2) ==
        doctest::Approx(0.7902848).epsilon(1e-13));
  CHECK(reg_inc_beta(2.5, 1.0, 0.37) ==
        doctest::Approx(0.083273019039782628).epsilon(1e-13));
}

TEST_CASE("incomplete beta identities") {
  CHECK(reg_inc_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(reg_inc_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1, 1) = x.
  for (double x : {0.001, 0.25, 0.5, 0.75, 0.999}) {
    CHECK(reg_inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-13));
  }
  // Symmetry point: I_{1/2}(a, a) = 1/2.
  for (double a : {0.2, 1.0, 3.5, 40.0}) {
    CHECK(reg_inc_beta(a, a, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  }
  // Reflection I_x(a, b) + I_{1-x}(b, a) = 1.
  for (double x : {0.02, 0.3, 0.77}) {
    for (double a : {0.4, 2.0, 11.0}) {
      double s = reg_inc_beta(a, 5.0, x) + reg_inc_beta(5.0, a, 1.0 - x);
      CHECK(s == doctest::Approx(1.0).epsilon(5e-14));
    }
  }
  CHECK_THROWS_AS(reg_inc_beta(0.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(1.0, -1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(1.0, 1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(1.0, 1.0, -0.1), std::domain_error);
}

#ifdef HAVE_BOOST_MATH
TEST_CASE("cross-check against boost::math on a mixed grid") {
  const double as[] = {1e-8, 1e-4, 0.1, 0.5, 1.0, 3.5, 12.0, 150.0};
  const double xs[] = {1e-9, 0.01, 0.4, 1.0, 2.5, 8.0, 40.0, 200.0};
  for (double a : as) {
    for (double x : xs) {
      double mine = reg_lower_inc_gamma(a, x);
      double ref = boost::math::gamma_p(a, x);
      CHECK(mine == doctest::Approx(ref).epsilon(1e-11));
      double mineq = reg_upper_inc_gamma(a, x);
      double refq = boost::math::gamma_q(a, x);
      if (refq > 1e-280) {
        CHECK(mineq == doctest::Approx(refq).epsilon(1e-11));
      }
    }
  }
  const double bs[] = {0.3, 1.0, 6.0, 25.0};
  const double us[] = {0.01, 0.2, 0.5, 0.8, 0.99};
  for (double a : bs) {
    for (double b : bs) {
      for (double x : us) {
        CHECK(reg_inc_beta(a, b, x) ==
              doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-11));
      }
    }
  }
}
#endif
