#include "expertvote/nuisance.hpp"

#include <cmath>
#include <limits>

namespace expertvote::nuisance {

namespace {

void validate_sample(const GhostSample& sample) {
  if (!(sample.u > 0.0) || !std::isfinite(sample.u))
    throw std::domain_error("GhostSample: u must be finite and > 0");
  if (std::isnan(sample.t)) throw std::domain_error("GhostSample: t is NaN");
}

void validate_summary(const NormalSummary& summary) {
  if (summary.n < 2) throw std::domain_error("NormalSummary: n must be >= 2");
  if (!std::isfinite(summary.mean))
    throw std::domain_error("NormalSummary: mean must be finite");
  if (!(summary.s2 > 0.0) || !std::isfinite(summary.s2))
    throw std::domain_error("NormalSummary: degenerate sample, s2 must be > 0");
}

void validate_model(const GammaPairModel& model) {
  if (!(model.p > 0.0) || !(model.q > 0.0) || !std::isfinite(model.p) ||
      !std::isfinite(model.q))
    throw std::domain_error("GammaPairModel: p and q must be finite and > 0");
}

}  // namespace

GammaPairModel GammaPairModel::from_dof(double k, double l) {
  if (!(k > 0.0) || !(l > 0.0))
    throw std::domain_error("GammaPairModel: degrees of freedom must be > 0");
  return {0.5 * k, 0.5 * l};
}

MixingDistribution::MixingDistribution(double shape, double scale)
    : shape_(shape), scale_(scale) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) ||
      !std::isfinite(scale))
    throw std::domain_error("MixingDistribution: shape and scale must be > 0");
}

double MixingDistribution::density(double v) const {
  if (std::isnan(v)) throw std::domain_error("MixingDistribution::density: NaN");
  if (v <= 0.0) return 0.0;
  double lv = std::log(v);
  return std::exp(shape_ * std::log(scale_) - std::lgamma(shape_) -
                  (shape_ + 1.0) * lv - scale_ / v);
}

double MixingDistribution::cdf(double v) const {
  if (std::isnan(v)) throw std::domain_error("MixingDistribution::cdf: NaN");
  if (v <= 0.0) return 0.0;
  return 1.0 - specfun::reg_lower_gamma(shape_, scale_ / v);
}

MixingDistribution inverse_gamma_mixing(double shape, double u,
                                        GammaConvention convention) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw std::domain_error("inverse_gamma_mixing: shape must be > 0");
  if (!(u > 0.0) || !std::isfinite(u))
    throw std::domain_error("inverse_gamma_mixing: u must be > 0");
  double scale = convention == GammaConvention::half_sum ? 0.5 * u : u;
  return MixingDistribution(shape, scale);
}

double student_vote(const NormalSummary& summary, double theta) {
  validate_summary(summary);
  if (!std::isfinite(theta))
    throw std::domain_error("student_vote: theta must be finite");
  double t_stat = std::sqrt(double(summary.n)) * (theta - summary.mean) /
                  std::sqrt(summary.s2);
  return specfun::student_cdf(double(summary.n - 1), t_stat);
}

double student_vote_quadrature(const NormalSummary& summary, double theta,
                               const specfun::Tolerance& tol) {
  validate_summary(summary);
  if (!std::isfinite(theta))
    throw std::domain_error("student_vote_quadrature: theta must be finite");
  double p = 0.5 * double(summary.n - 1);
  double u = double(summary.n - 1) * summary.s2;
  double half_u = 0.5 * u;
  double shift = std::sqrt(double(summary.n)) * (theta - summary.mean);
  double log_norm = p * std::log(half_u) - std::lgamma(p);
  auto integrand = [=](double lambda) {
    if (lambda <= 0.0) return 0.0;
    double w = std::exp(log_norm + (p - 1.0) * std::log(lambda) - half_u * lambda);
    if (w == 0.0) return 0.0;
    return specfun::normal_cdf(shift * std::sqrt(lambda)) * w;
  };
  return specfun::quadrature(integrand, 0.0,
                             std::numeric_limits<double>::infinity(), tol);
}

double anova_point_mass(const GammaPairModel& model, const GhostSample& sample) {
  validate_model(model);
  validate_sample(sample);
  if (sample.t < 0.0)
    throw std::domain_error("anova_point_mass: t must be >= 0");
  double r = sample.t / sample.u;
  return 1.0 - specfun::reg_inc_beta(model.p, model.q, r / (1.0 + r));
}

double anova_vote_series(const GammaPairModel& model, const GhostSample& sample,
                         double theta, const specfun::Tolerance& tol) {
  validate_model(model);
  validate_sample(sample);
  tol.validate();
  if (sample.t < 0.0)
    throw std::domain_error("anova_vote_series: t must be >= 0");
  if (std::isnan(theta) || theta < 0.0)
    throw std::domain_error("anova_vote_series: theta must be >= 0");
  if (theta == 0.0) return anova_point_mass(model, sample);
  if (std::isinf(theta)) return 1.0;

  // Negative-binomial weights Gamma(q+m)/(m! Gamma(q)) theta^m u^q /
  // (theta+u)^(q+m); each beta CDF factor is <= 1, so the mass still
  // uncovered bounds the truncation error.
  // Weight recurrence in extended precision for the same reason as the
  // Poisson window: long series otherwise drift below the mass target.
  double denom = theta + sample.u;
  double x_beta = sample.t / (denom + sample.t);  // (t/denom)/(1+t/denom)
  long double fail_ratio = (long double)theta / denom;
  long double w = powl((long double)sample.u / denom, model.q);
  long double covered = 0.0L;
  specfun::detail::KahanSum s;
  const double target = 1.0 - tol.series_tail;
  for (int m = 0;; ++m) {
    if (m >= tol.max_terms)
      throw truncation_error("anova_vote_series: weight target not reached within max_terms");
    s.add(double(w) * specfun::reg_inc_beta(model.p + m, model.q + m, x_beta));
    covered += w;
    if (covered >= target) break;
    w *= (model.q + m) / (long double)(m + 1) * fail_ratio;
  }
  return 1.0 - s.value();
}

AnovaInductiveDistribution::AnovaInductiveDistribution(GammaPairModel model,
                                                       GhostSample sample,
                                                       specfun::Tolerance tol)
    : model_(model), sample_(sample), tol_(tol),
      atom_(anova_point_mass(model, sample)) {
  tol_.validate();
}

double AnovaInductiveDistribution::cdf_at(double theta) const {
  return anova_vote_series(model_, sample_, theta, tol_);
}

double AnovaInductiveDistribution::prob(double a, double b) const {
  if (std::isnan(a) || std::isnan(b) || !(a <= b))
    throw std::domain_error("AnovaInductiveDistribution::prob: requires a <= b");
  if (b < 0.0) return 0.0;
  if (a <= 0.0) return cdf_at(std::max(b, 0.0));  // includes the atom at 0
  return cdf_at(b) - cdf_at(a);
}

AnovaInductiveDistribution anova_inductive_distribution(
    const GammaPairModel& model, const GhostSample& sample,
    const specfun::Tolerance& tol) {
  return AnovaInductiveDistribution(model, sample, tol);
}

}  // namespace expertvote::nuisance
