#pragma once

#include <span>

#include "expertvote/models.hpp"

namespace expertvote::votes {

// A probability on the two-decision space {0,1}; q1 weights the decision
// "theta lies in Theta_1".  Built with a single subtraction so q0 + q1 == 1.
struct VoteResult {
  double q0 = 0.0;
  double q1 = 1.0;

  static VoteResult from_q0(double q0) { return {q0, 1.0 - q0}; }
};

// One-sided split Theta_1 = (-inf, boundary] cap Theta versus its
// complement; both sides must be nonempty.
class OneSidedSplit {
 public:
  OneSidedSplit(models::MlrFamily family, double boundary);

  const models::MlrFamily& family() const { return family_; }
  double boundary() const { return boundary_; }

 private:
  models::MlrFamily family_;
  double boundary_;
};

// Bilateral split Theta_0 = [theta1, theta2] versus its complement.
class BilateralSplit {
 public:
  BilateralSplit(models::MlrFamily family, double theta1, double theta2);

  const models::MlrFamily& family() const { return family_; }
  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }

 private:
  models::MlrFamily family_;
  double theta1_, theta2_;
};

// The probability on the parameter interval whose CDF is 1 - F(theta, x);
// constructed only after the compatibility limit conditions hold.
class InductiveDistribution {
 public:
  // CDF at theta, clamped to 0 / 1 beyond the parameter interval.
  double cdf_at(double theta) const;
  // Probability of [a, b] intersected with the parameter interval.
  double prob(double a, double b) const;

  const models::MlrFamily& family() const { return family_; }
  double realization() const { return x_; }

 private:
  friend InductiveDistribution inductive_distribution(const models::MlrFamily&,
                                                      double);
  InductiveDistribution(models::MlrFamily family, double x)
      : family_(std::move(family)), x_(x) {}

  models::MlrFamily family_;
  double x_;
};

// Vote of the experts under P_theta at realization x: q1 = 1 - F(theta,x).
// The boundary argument labels the split and does not enter the value.
VoteResult vote_at(const models::MlrFamily& family, double theta,
                   double boundary, double x);

// The neutral vote, taken at the boundary parameter; its components are the
// two one-sided p-values.
VoteResult neutral_vote(const OneSidedSplit& split, double x);

// True iff F(theta, x) is nonincreasing across the sorted boundary list,
// i.e. the one-sided p-values are ordered coherently.
bool coherence_check(const models::MlrFamily& family, double x,
                     std::span<const double> boundaries, double abs_tol = 1e-10);

// Extends the neutral votes to a probability on the parameter interval.
// Throws compatibility_error naming the failed limit condition.
InductiveDistribution inductive_distribution(const models::MlrFamily& family,
                                             double x);

// Order-coherent bilateral vote: q0 = F(theta1,x) - F(theta2,x).
VoteResult bilateral_vote_compatible(const BilateralSplit& split, double x);

// Symmetric bilateral vote for the normal location family: with
// z = |x-c|/sigma and lambda = lambda1/sigma,
// q1 = Phi(z - lambda) - Phi(-z - lambda), the unbiased-test p-value of
// H0': theta outside [c - lambda1, c + lambda1].
VoteResult bilateral_vote_symmetric_normal(double c, double lambda1, double x,
                                           double sigma = 1.0);

// Same vote through the noncentral chi-square route: q1 is the CDF of a
// one-degree noncentral chi-square with noncentrality lambda1^2 at (x-c)^2.
VoteResult symmetric_vote_via_chi2(double c, double lambda1, double x,
                                   const specfun::Tolerance& tol = {});

}  // namespace expertvote::votes
