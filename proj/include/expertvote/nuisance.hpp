#pragma once

#include "expertvote/specfun.hpp"

namespace expertvote::nuisance {

// Realizations of the independent pair (T, U) driving the nuisance mixing.
struct GhostSample {
  double t = 0.0;
  double u = 1.0;  // must be > 0
};

// Sufficient summary of an n-sample from N(theta, sigma^2): sample mean and
// the 1/(n-1) variance.
struct NormalSummary {
  int n = 2;
  double mean = 0.0;
  double s2 = 1.0;
};

// Shapes of the gamma pair model; the ANOVA correspondence is p = k/2,
// q = l/2 for a noncentral F statistic with (k, l) degrees of freedom.
struct GammaPairModel {
  double p = 1.0;
  double q = 1.0;

  static GammaPairModel from_dof(double k, double l);
};

// Which gamma scale ties the mixing law to the realization u:
// half_sum   - reciprocal distributed gamma(shape, 2/u)
// gamma_rate - reciprocal distributed gamma(shape, 1/u)
enum class GammaConvention { half_sum, gamma_rate };

// Inverse-gamma law with density proportional to v^{-shape-1} e^{-scale/v}.
class MixingDistribution {
 public:
  MixingDistribution(double shape, double scale);

  double shape() const { return shape_; }
  double scale() const { return scale_; }
  double density(double v) const;
  double cdf(double v) const;  // 1 - P(shape, scale/v)
  double mode() const { return scale_ / (shape_ + 1.0); }

 private:
  double shape_, scale_;
};

// The inductive distribution of the nuisance parameter built from U = u.
MixingDistribution inverse_gamma_mixing(double shape, double u,
                                        GammaConvention convention);

// Q^{(t,u)}((-inf, theta]) for the normal model with unknown variance: the
// Student CDF with n-1 degrees of freedom at sqrt(n) (theta - mean) / s.
double student_vote(const NormalSummary& summary, double theta);

// The same vote by direct numerical mixing of Phi(sqrt(n)(theta-mean)
// sqrt(lambda)) against gamma((n-1)/2, 2/u) in lambda = 1/upsilon.
double student_vote_quadrature(const NormalSummary& summary, double theta,
                               const specfun::Tolerance& tol = specfun::Tolerance{1e-8});

// Q^{(t,u)}([0]): the atom of the gamma-pair inductive distribution, equal
// to the classical F-test p-value under the ANOVA correspondence.
double anova_point_mass(const GammaPairModel& model, const GhostSample& sample);

// Q^{(t,u)}([0, theta]) by the negative-binomial beta series.
double anova_vote_series(const GammaPairModel& model, const GhostSample& sample,
                         double theta,
                         const specfun::Tolerance& tol = specfun::Tolerance{1e-10, 1e-12});

// Inductive distribution on [0, inf): an exact atom at 0 plus the
// continuous part given by series differences.
class AnovaInductiveDistribution {
 public:
  AnovaInductiveDistribution(GammaPairModel model, GhostSample sample,
                             specfun::Tolerance tol = specfun::Tolerance{1e-10, 1e-12});

  double atom_mass() const { return atom_; }
  double cdf_at(double theta) const;
  double prob(double a, double b) const;  // Q([a,b] cap [0,inf))

 private:
  GammaPairModel model_;
  GhostSample sample_;
  specfun::Tolerance tol_;
  double atom_;
};

AnovaInductiveDistribution anova_inductive_distribution(
    const GammaPairModel& model, const GhostSample& sample,
    const specfun::Tolerance& tol = specfun::Tolerance{1e-10, 1e-12});

}  // namespace expertvote::nuisance
