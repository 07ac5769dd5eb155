#pragma once

#include <functional>
#include <vector>

#include "expertvote/errors.hpp"

namespace expertvote::specfun {

// Accuracy and truncation knobs shared by the series and quadrature code.
struct Tolerance {
  double abs_tol = 1e-10;      // absolute error target for scalar results
  double series_tail = 1e-13;  // mixture mass allowed to stay untruncated
  int max_terms = 10000;       // cap on series terms / quadrature segments

  void validate() const;
};

// Mixing weights over a contiguous index range [start_index, start_index+n).
struct WeightedTerms {
  long start_index = 0;
  std::vector<double> weights;

  double total() const;
};

namespace detail {

// Kahan compensated accumulator; long mixing series push plain summation
// error into the same decade as the tail targets.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace detail

// Standard normal CDF.
double normal_cdf(double z);

// Regularized lower incomplete gamma P(a,x), a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

// Regularized incomplete beta I_x(a,b), a,b > 0, x in [0,1].
double reg_inc_beta(double a, double b, double x);

// CDF of the Student t distribution with nu > 0 degrees of freedom.
double student_cdf(double nu, double t);

// Poisson(lambda) masses e^{-lambda} lambda^m / m! covering at least
// 1 - series_tail of the total mass.  For lambda = 0 the single weight 1
// at m = 0.  Large lambda grows a window outward from the modal index.
WeightedTerms poisson_weights(double lambda, const Tolerance& tol = {});

// Adaptive Gauss-Kronrod (7,15) integration of f over (a,b).  Infinite
// endpoints are mapped to a finite interval by a smooth rational
// substitution before subdividing.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  const Tolerance& tol = Tolerance{1e-8});

}  // namespace expertvote::specfun
