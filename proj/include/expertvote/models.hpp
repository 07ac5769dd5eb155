#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expertvote/specfun.hpp"

namespace expertvote::models {

// A real interval with recorded endpoint inclusion.  Infinite endpoints are
// always open.
struct ParamInterval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_closed = false;
  bool upper_closed = false;

  static ParamInterval real_line() { return {}; }
  static ParamInterval positive_half_line() { return {0.0, std::numeric_limits<double>::infinity(), false, false}; }
  static ParamInterval nonneg_half_line() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }

  bool contains(double v) const;
  void validate() const;
};

// A parametric family of strictly positive densities on a real interval,
// claimed strictly MLR, described by its CDF F(theta,x) and log density.
class MlrFamily {
 public:
  using Field = std::function<double(double theta, double x)>;

  MlrFamily(std::string family_tag, ParamInterval theta_domain,
            ParamInterval support, Field cdf, Field log_density);

  const std::string& family_tag() const { return tag_; }
  const ParamInterval& theta_domain() const { return theta_domain_; }
  const ParamInterval& support() const { return support_; }

  // F(theta,x).  theta outside the parameter interval or x outside the
  // closure of the support is an error; closure endpoints give 0 / 1.
  double cdf(double theta, double x) const;
  double log_density(double theta, double x) const;

  // Inverts F(theta,.) by monotone bisection on the support.
  double quantile(double theta, double u, double abs_tol = 1e-10) const;

 private:
  std::string tag_;
  ParamInterval theta_domain_;
  ParamInterval support_;
  Field cdf_;
  Field log_density_;
};

// Catalog constructors.
MlrFamily normal_location(double sigma);
MlrFamily gamma_scale(double shape, double scale_multiplier);
MlrFamily noncentral_beta(double p, double q, const specfun::Tolerance& tol = {});
MlrFamily noncentral_chi2_one(const specfun::Tolerance& tol = {});

struct MlrViolation {
  double theta_lo = 0, theta_hi = 0;
  double x_prev = 0, x_next = 0;
  double delta_prev = 0, delta_next = 0;  // log-likelihood-ratio values
};

struct MlrReport {
  bool ok = true;
  std::optional<MlrViolation> violation;
  explicit operator bool() const { return ok; }
};

// Checks that log p_{theta''}(x) - log p_{theta'}(x) increases in x for
// every theta' < theta'' on the grid; returns the first violation found.
MlrReport mlr_verify(const MlrFamily& family, std::span<const double> theta_grid,
                     std::span<const double> x_grid, double abs_tol = 1e-10);

struct BoundaryReport {
  bool upper_checked = false, upper_ok = true;
  bool lower_checked = false, lower_ok = true;
  double upper_value = 0.0;  // last probed F value toward sup
  double lower_value = 1.0;  // last probed F value toward inf
  bool ok() const { return upper_ok && lower_ok; }
  explicit operator bool() const { return ok(); }
};

// Verifies the compatibility limit conditions: F(theta,x) -> 0 as theta
// approaches an open sup of the parameter interval, and -> 1 at an open inf.
// Probes are walked toward each endpoint and stop early once within abs_tol
// (F(.,x) is monotone, so the limit cannot recover).
BoundaryReport boundary_limits_check(const MlrFamily& family, double x,
                                     std::span<const double> upper_probes,
                                     std::span<const double> lower_probes,
                                     double abs_tol = 1e-9);

// Same with a default geometric probe schedule built from the domain.
BoundaryReport boundary_limits_check(const MlrFamily& family, double x,
                                     double abs_tol = 1e-9);

}  // namespace expertvote::models
