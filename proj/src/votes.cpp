#include "expertvote/votes.hpp"

#include <cmath>

namespace expertvote::votes {

namespace {

// F(theta, x) extended by its limits beyond the parameter interval.
double cdf_in_theta_clamped(const models::MlrFamily& family, double theta,
                            double x) {
  const models::ParamInterval& dom = family.theta_domain();
  if (theta <= dom.lower && !(theta == dom.lower && dom.lower_closed)) return 1.0;
  if (theta >= dom.upper && !(theta == dom.upper && dom.upper_closed)) return 0.0;
  return family.cdf(theta, x);
}

}  // namespace

OneSidedSplit::OneSidedSplit(models::MlrFamily family, double boundary)
    : family_(std::move(family)), boundary_(boundary) {
  const models::ParamInterval& dom = family_.theta_domain();
  if (!dom.contains(boundary))
    throw std::domain_error("OneSidedSplit: boundary outside the parameter interval");
  if (!(boundary < dom.upper))
    throw std::domain_error(
        "OneSidedSplit: boundary at sup Theta leaves Theta_0 empty (degenerate split)");
}

BilateralSplit::BilateralSplit(models::MlrFamily family, double theta1,
                               double theta2)
    : family_(std::move(family)), theta1_(theta1), theta2_(theta2) {
  const models::ParamInterval& dom = family_.theta_domain();
  if (!dom.contains(theta1) || !dom.contains(theta2))
    throw std::domain_error("BilateralSplit: endpoints outside the parameter interval");
  if (!(theta1 <= theta2))
    throw std::domain_error("BilateralSplit: requires theta1 <= theta2");
}

VoteResult vote_at(const models::MlrFamily& family, double theta,
                   double boundary, double x) {
  (void)boundary;
  return VoteResult::from_q0(family.cdf(theta, x));
}

VoteResult neutral_vote(const OneSidedSplit& split, double x) {
  return VoteResult::from_q0(split.family().cdf(split.boundary(), x));
}

bool coherence_check(const models::MlrFamily& family, double x,
                     std::span<const double> boundaries, double abs_tol) {
  double prev = 0.0;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (i > 0 && !(boundaries[i - 1] < boundaries[i]))
      throw std::domain_error("coherence_check: boundaries must be sorted");
    double q0 = family.cdf(boundaries[i], x);
    if (i > 0 && q0 > prev + abs_tol) return false;
    prev = q0;
  }
  return true;
}

double InductiveDistribution::cdf_at(double theta) const {
  return 1.0 - cdf_in_theta_clamped(family_, theta, x_);
}

double InductiveDistribution::prob(double a, double b) const {
  if (std::isnan(a) || std::isnan(b) || !(a <= b))
    throw std::domain_error("InductiveDistribution::prob: requires a <= b");
  const models::ParamInterval& dom = family_.theta_domain();
  // Left of the interval nothing sits below a, including a possible atom at
  // an attained inf; elsewhere Q([a,b]) is the exact CDF difference.
  if (a <= dom.lower) return cdf_at(b);
  return cdf_in_theta_clamped(family_, a, x_) -
         cdf_in_theta_clamped(family_, b, x_);
}

InductiveDistribution inductive_distribution(const models::MlrFamily& family,
                                             double x) {
  models::BoundaryReport report = models::boundary_limits_check(family, x);
  if (!report.lower_ok)
    throw compatibility_error(
        "inductive_distribution: F(theta,x) does not tend to 1 at the open inf of "
        "the parameter interval of " +
        family.family_tag());
  if (!report.upper_ok)
    throw compatibility_error(
        "inductive_distribution: F(theta,x) does not tend to 0 at the open sup of "
        "the parameter interval of " +
        family.family_tag());
  return InductiveDistribution(family, x);
}

VoteResult bilateral_vote_compatible(const BilateralSplit& split, double x) {
  InductiveDistribution q = inductive_distribution(split.family(), x);
  (void)q;
  double f1 = split.family().cdf(split.theta1(), x);
  double f2 = split.family().cdf(split.theta2(), x);
  return VoteResult::from_q0(f1 - f2);
}

VoteResult bilateral_vote_symmetric_normal(double c, double lambda1, double x,
                                           double sigma) {
  if (!(lambda1 >= 0.0) || !std::isfinite(lambda1))
    throw std::domain_error("bilateral_vote_symmetric_normal: lambda1 must be >= 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::domain_error("bilateral_vote_symmetric_normal: sigma must be > 0");
  if (!std::isfinite(c) || !std::isfinite(x))
    throw std::domain_error("bilateral_vote_symmetric_normal: non-finite argument");
  double z = std::fabs(x - c) / sigma;
  double lambda = lambda1 / sigma;
  double q1 = specfun::normal_cdf(z - lambda) - specfun::normal_cdf(-z - lambda);
  return {1.0 - q1, q1};
}

VoteResult symmetric_vote_via_chi2(double c, double lambda1, double x,
                                   const specfun::Tolerance& tol) {
  if (!(lambda1 >= 0.0) || !std::isfinite(lambda1))
    throw std::domain_error("symmetric_vote_via_chi2: lambda1 must be >= 0");
  if (!std::isfinite(c) || !std::isfinite(x))
    throw std::domain_error("symmetric_vote_via_chi2: non-finite argument");
  models::MlrFamily chi2 = models::noncentral_chi2_one(tol);
  double w = (x - c) * (x - c);
  double q1 = chi2.cdf(lambda1, w);
  return {1.0 - q1, q1};
}

}  // namespace expertvote::votes
