#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "expertvote/oracle.hpp"
#include "expertvote/specfun.hpp"

using namespace expertvote;
using namespace expertvote::specfun;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("normal_cdf pins its reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  // Phi(1.68) = 0.9535 to four decimals.
  CHECK(std::round(normal_cdf(1.68) * 1e4) == 9535.0);
  // Lower tail against direct quadrature of the density over (-inf, -3].
  double tail = quadrature([](double x) { return normal_pdf(x); }, -kInf, -3.0,
                           Tolerance{1e-10});
  CHECK(std::fabs(normal_cdf(-3.0) - tail) <= 1e-5);
  CHECK(std::fabs(normal_cdf(-3.0) - 0.0013498980316301) <= 1e-10);
}

TEST_CASE("normal_cdf symmetry and monotonicity") {
  oracle::SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    double z = 16.0 * rng.next_unit() - 8.0;
    double v = normal_cdf(z);
    CHECK(std::fabs(v + normal_cdf(-z) - 1.0) <= 1e-12);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  double prev = normal_cdf(-8.0);
  for (double z = -7.5; z <= 8.0; z += 0.5) {
    double v = normal_cdf(z);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(normal_cdf(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK_THROWS_AS(normal_cdf(kInf), std::domain_error);
}

TEST_CASE("reg_lower_gamma closed forms") {
  // P(1, x) = 1 - e^{-x}.
  CHECK(std::fabs(reg_lower_gamma(1.0, std::log(2.0)) - 0.5) <= 1e-12);
  CHECK(reg_lower_gamma(3.7, 0.0) == 0.0);
  // Chi-square(1) halves the normal: P(1/2, z^2/2) = 2 Phi(z) - 1.
  CHECK(std::fabs(reg_lower_gamma(0.5, 2.25 / 2.0) -
                  (2.0 * normal_cdf(1.5) - 1.0)) <= 1e-10);
  CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_lower_gamma(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_lower_gamma(1.0, -0.5), std::domain_error);
}

TEST_CASE("reg_lower_gamma agrees with quadrature of its integrand") {
  oracle::SplitMix64 rng(23);
  for (int i = 0; i < 12; ++i) {
    double a = 1.0 + 7.0 * rng.next_unit();
    double x = 0.1 + 8.0 * rng.next_unit();
    double direct = quadrature(
        [a](double t) {
          return std::exp((a - 1.0) * std::log(t) - t - std::lgamma(a));
        },
        0.0, x, Tolerance{1e-10});
    CHECK(std::fabs(reg_lower_gamma(a, x) - direct) <= 1e-8);
  }
}

TEST_CASE("reg_lower_gamma monotone in x with limits 0 and 1") {
  double prev = 0.0;
  for (double x = 0.0; x <= 40.0; x += 0.25) {
    double v = reg_lower_gamma(2.5, x);
    CHECK(v >= prev);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK(prev > 1.0 - 1e-12);
}

TEST_CASE("reg_inc_beta closed forms") {
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0})
    CHECK(std::fabs(reg_inc_beta(1.0, 1.0, x) - x) <= 1e-14);
  CHECK(std::fabs(reg_inc_beta(3.3, 3.3, 0.5) - 0.5) <= 1e-12);
  // I_x(2,3) = 6x^2 - 8x^3 + 3x^4 from expanding the integrand.
  double x = 0.4;
  double poly = 6.0 * x * x - 8.0 * x * x * x + 3.0 * x * x * x * x;
  CHECK(std::fabs(poly - 0.5248) <= 1e-14);
  CHECK(std::fabs(reg_inc_beta(2.0, 3.0, 0.4) - poly) <= 1e-10);
  CHECK_THROWS_AS(reg_inc_beta(2.0, 3.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(2.0, 3.0, 1.1), std::domain_error);
  CHECK_THROWS_AS(reg_inc_beta(0.0, 3.0, 0.5), std::domain_error);
}

TEST_CASE("reg_inc_beta symmetry and quadrature oracle") {
  oracle::SplitMix64 rng(37);
  for (int i = 0; i < 12; ++i) {
    double a = 1.0 + 5.0 * rng.next_unit();
    double b = 1.0 + 5.0 * rng.next_unit();
    double x = rng.next_unit();
    double v = reg_inc_beta(a, b, x);
    CHECK(std::fabs(v - (1.0 - reg_inc_beta(b, a, 1.0 - x))) <= 1e-10);
    double direct = quadrature(
        [a, b](double t) {
          return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) +
                          std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b));
        },
        0.0, x, Tolerance{1e-10});
    CHECK(std::fabs(v - direct) <= 1e-8);
  }
}

TEST_CASE("reg_inc_beta is a CDF in x") {
  oracle::SplitMix64 rng(41);
  for (int i = 0; i < 6; ++i) {
    double a = 0.4 + 5.0 * rng.next_unit();
    double b = 0.4 + 5.0 * rng.next_unit();
    double prev = 0.0;
    for (double x = 0.0; x <= 1.0; x += 0.02) {
      double v = reg_inc_beta(a, b, x);
      CHECK(v >= prev);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}

TEST_CASE("poisson_weights matches the direct formula") {
  WeightedTerms zero = poisson_weights(0.0);
  CHECK(zero.start_index == 0);
  REQUIRE(zero.weights.size() == 1);
  CHECK(zero.weights[0] == 1.0);

  Tolerance tol;
  tol.series_tail = 1e-13;
  WeightedTerms w = poisson_weights(1.0, tol);
  CHECK(w.start_index == 0);
  for (std::size_t m = 0; m < w.weights.size(); ++m) {
    double expected = std::exp(-1.0 - std::lgamma(double(m) + 1.0));
    CHECK(std::fabs(w.weights[m] - expected) <= 1e-15);
  }
  CHECK(w.total() >= 1.0 - 1e-13);
  CHECK(w.total() <= 1.0 + 1e-12);
}

TEST_CASE("poisson_weights mass deficit stays below series_tail") {
  for (double lambda : {0.3, 2.0, 17.5, 64.0, 500.0, 4096.0}) {
    WeightedTerms w = poisson_weights(lambda);
    CHECK(w.total() >= 1.0 - 1e-13);
    CHECK(w.total() <= 1.0 + 1e-12);
    CHECK(w.start_index >= 0);
    for (double wi : w.weights) CHECK(wi >= 0.0);
  }
}

TEST_CASE("poisson_weights reports truncation when capped") {
  Tolerance tight;
  tight.max_terms = 3;
  CHECK_THROWS_AS(poisson_weights(50.0, tight), truncation_error);
}

TEST_CASE("student_cdf closed forms and the incomplete-beta identity") {
  CHECK(student_cdf(7.3, 0.0) == 0.5);
  // One degree of freedom is Cauchy: 1/2 + atan(t)/pi.
  CHECK(std::fabs(student_cdf(1.0, 1.0) -
                  (0.5 + std::atan(1.0) / std::numbers::pi)) <= 1e-12);
  // t_4 lower tail at -3 via I_x(nu/2, 1/2).
  double by_beta = 0.5 * reg_inc_beta(2.0, 0.5, 4.0 / 13.0);
  CHECK(std::fabs(student_cdf(4.0, -3.0) - by_beta) <= 1e-12);
  CHECK(std::fabs(student_cdf(4.0, -3.0) - 0.0200) <= 1e-4);
  CHECK_THROWS_AS(student_cdf(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(student_cdf(-2.0, 1.0), std::domain_error);
}

TEST_CASE("student_cdf is a CDF") {
  double prev = 0.0;
  for (double t = -30.0; t <= 30.0; t += 0.5) {
    double v = student_cdf(2.5, t);
    CHECK(v >= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("quadrature reference integrals") {
  CHECK(std::fabs(quadrature([](double) { return 1.0; }, 0.0, 1.0) - 1.0) <= 1e-13);
  double gauss = quadrature([](double x) { return normal_pdf(x); }, -kInf, kInf,
                            Tolerance{1e-12});
  CHECK(std::fabs(gauss - 1.0) <= 1e-10);
  // Gamma(2) = 1.
  double gamma2 = quadrature([](double x) { return x * std::exp(-x); }, 0.0,
                             kInf, Tolerance{1e-12});
  CHECK(std::fabs(gamma2 - 1.0) <= 1e-10);
  CHECK(quadrature([](double x) { return x; }, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(quadrature([](double x) { return x; }, 1.0, 0.0),
                  std::domain_error);
}

TEST_CASE("quadrature reports an exhausted budget") {
  Tolerance tiny;
  tiny.abs_tol = 1e-13;
  tiny.max_terms = 8;
  CHECK_THROWS_AS(quadrature([](double x) { return std::sin(1.0 / x) / x; },
                             1e-6, 1.0, tiny),
                  quadrature_error);
}

TEST_CASE("tolerance invariants are enforced") {
  Tolerance bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = Tolerance{};
  bad.series_tail = -1.0;
  CHECK_THROWS_AS(poisson_weights(1.0, bad), std::domain_error);
  bad = Tolerance{};
  bad.max_terms = 0;
  CHECK_THROWS_AS(poisson_weights(1.0, bad), std::domain_error);
}
