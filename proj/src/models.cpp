#include "expertvote/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace expertvote::models {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool ParamInterval::contains(double v) const {
  if (std::isnan(v)) return false;
  if (v < lower || (v == lower && !lower_closed)) return false;
  if (v > upper || (v == upper && !upper_closed)) return false;
  return true;
}

void ParamInterval::validate() const {
  if (std::isnan(lower) || std::isnan(upper) || !(lower < upper))
    throw std::domain_error("ParamInterval: requires lower < upper");
  if ((std::isinf(lower) && lower_closed) || (std::isinf(upper) && upper_closed))
    throw std::domain_error("ParamInterval: infinite endpoints must be open");
}

MlrFamily::MlrFamily(std::string family_tag, ParamInterval theta_domain,
                     ParamInterval support, Field cdf, Field log_density)
    : tag_(std::move(family_tag)),
      theta_domain_(theta_domain),
      support_(support),
      cdf_(std::move(cdf)),
      log_density_(std::move(log_density)) {
  theta_domain_.validate();
  support_.validate();
  if (!cdf_ || !log_density_)
    throw std::domain_error("MlrFamily: cdf and log_density are required");
}

double MlrFamily::cdf(double theta, double x) const {
  if (!theta_domain_.contains(theta))
    throw std::domain_error("MlrFamily::cdf: theta outside the parameter interval of " + tag_);
  if (std::isnan(x) || x < support_.lower || x > support_.upper)
    throw std::domain_error("MlrFamily::cdf: x outside the support of " + tag_);
  if (x == support_.lower && !support_.lower_closed) return 0.0;
  if (x == support_.upper && !support_.upper_closed) return 1.0;
  return cdf_(theta, x);
}

double MlrFamily::log_density(double theta, double x) const {
  if (!theta_domain_.contains(theta))
    throw std::domain_error("MlrFamily::log_density: theta outside the parameter interval of " + tag_);
  if (!support_.contains(x))
    throw std::domain_error("MlrFamily::log_density: x outside the support of " + tag_);
  return log_density_(theta, x);
}

double MlrFamily::quantile(double theta, double u, double abs_tol) const {
  if (!theta_domain_.contains(theta))
    throw std::domain_error("MlrFamily::quantile: theta outside the parameter interval of " + tag_);
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("MlrFamily::quantile: u must lie in (0,1)");
  if (!(abs_tol > 0.0)) throw std::domain_error("MlrFamily::quantile: abs_tol must be > 0");

  // Bracket the root, expanding geometrically past infinite endpoints.
  double lo = support_.lower, hi = support_.upper;
  if (std::isinf(lo)) {
    lo = std::isinf(hi) ? -1.0 : hi - 1.0;
    double step = 1.0;
    while (cdf(theta, lo) > u) {
      step *= 2.0;
      lo -= step;
      if (step > 1e300) throw numeric_error("MlrFamily::quantile: no lower bracket");
    }
  }
  if (std::isinf(hi)) {
    hi = std::max(lo, std::isinf(support_.lower) ? 1.0 : support_.lower + 1.0);
    double step = 1.0;
    while (cdf(theta, hi) < u) {
      step *= 2.0;
      hi += step;
      if (step > 1e300) throw numeric_error("MlrFamily::quantile: no upper bracket");
    }
  }

  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // interval exhausted in doubles
    double fm = cdf(theta, mid);
    if (std::fabs(fm - u) <= abs_tol) return mid;
    (fm < u ? lo : hi) = mid;
  }
  // The bracket collapsed; accept its midpoint if F is within a loose bound.
  double mid = 0.5 * (lo + hi);
  if (std::fabs(cdf(theta, mid) - u) <= 1e3 * abs_tol) return mid;
  throw numeric_error("MlrFamily::quantile: bisection did not converge");
}

MlrFamily normal_location(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::domain_error("normal_location: sigma must be finite and > 0");
  auto cdf = [sigma](double theta, double x) {
    return specfun::normal_cdf((x - theta) / sigma);
  };
  auto logpdf = [sigma](double theta, double x) {
    double z = (x - theta) / sigma;
    return -0.5 * z * z - std::log(sigma) - kLogSqrt2Pi;
  };
  return MlrFamily("normal_location(sigma=" + fmt_param(sigma) + ")",
                   ParamInterval::real_line(), ParamInterval::real_line(), cdf,
                   logpdf);
}

MlrFamily gamma_scale(double shape, double scale_multiplier) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw std::domain_error("gamma_scale: shape must be finite and > 0");
  if (!(scale_multiplier > 0.0) || !std::isfinite(scale_multiplier))
    throw std::domain_error("gamma_scale: scale multiplier must be finite and > 0");
  double p = shape, m = scale_multiplier;
  auto cdf = [p, m](double ups, double u) {
    return specfun::reg_lower_gamma(p, u / (m * ups));
  };
  auto logpdf = [p, m](double ups, double u) {
    double s = m * ups;
    return (p - 1.0) * std::log(u / s) - u / s - std::log(s) - std::lgamma(p);
  };
  return MlrFamily("gamma_scale(p=" + fmt_param(shape) + ",m=" + fmt_param(m) + ")",
                   ParamInterval::positive_half_line(),
                   ParamInterval::positive_half_line(), cdf, logpdf);
}

MlrFamily noncentral_beta(double p, double q, const specfun::Tolerance& tol) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q))
    throw std::domain_error("noncentral_beta: p and q must be finite and > 0");
  tol.validate();
  // Beta law on the positive half line (beta prime) with Poisson mixing on
  // the first shape parameter.
  auto cdf = [p, q, tol](double theta, double x) {
    double y = x / (1.0 + x);
    auto w = specfun::poisson_weights(theta, tol);
    double s = 0.0;
    for (std::size_t i = 0; i < w.weights.size(); ++i)
      s += w.weights[i] * specfun::reg_inc_beta(p + double(w.start_index + long(i)), q, y);
    return std::min(s, 1.0);
  };
  auto logpdf = [p, q, tol](double theta, double x) {
    auto w = specfun::poisson_weights(theta, tol);
    double lx = std::log(x);
    double l1px = std::log1p(x);
    double best = -kInf;
    std::vector<double> terms(w.weights.size(), -kInf);
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
      if (w.weights[i] <= 0.0) continue;
      double a = p + double(w.start_index + long(i));
      double t = std::log(w.weights[i]) + std::lgamma(a + q) - std::lgamma(a) -
                 std::lgamma(q) + (a - 1.0) * lx - (a + q) * l1px;
      terms[i] = t;
      best = std::max(best, t);
    }
    if (best == -kInf) return -kInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - best);
    return best + std::log(s);
  };
  return MlrFamily("noncentral_beta(p=" + fmt_param(p) + ",q=" + fmt_param(q) + ")",
                   ParamInterval::nonneg_half_line(),
                   ParamInterval::positive_half_line(), cdf, logpdf);
}

MlrFamily noncentral_chi2_one(const specfun::Tolerance& tol) {
  tol.validate();
  // Chi-square with one degree of freedom and noncentrality lambda^2,
  // evaluated as a Poisson(lambda^2/2) mixture of central chi-squares.
  auto cdf = [tol](double lambda, double w) {
    auto wt = specfun::poisson_weights(0.5 * lambda * lambda, tol);
    double s = 0.0;
    for (std::size_t i = 0; i < wt.weights.size(); ++i)
      s += wt.weights[i] *
           specfun::reg_lower_gamma(0.5 + double(wt.start_index + long(i)), 0.5 * w);
    return std::min(s, 1.0);
  };
  auto logpdf = [tol](double lambda, double w) {
    auto wt = specfun::poisson_weights(0.5 * lambda * lambda, tol);
    double lw = std::log(w);
    double best = -kInf;
    std::vector<double> terms(wt.weights.size(), -kInf);
    for (std::size_t i = 0; i < wt.weights.size(); ++i) {
      if (wt.weights[i] <= 0.0) continue;
      double a = 0.5 + double(wt.start_index + long(i));
      double t = std::log(wt.weights[i]) + (a - 1.0) * lw - 0.5 * w -
                 a * std::numbers::ln2 - std::lgamma(a);
      terms[i] = t;
      best = std::max(best, t);
    }
    if (best == -kInf) return -kInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - best);
    return best + std::log(s);
  };
  return MlrFamily("noncentral_chi2_one", ParamInterval::nonneg_half_line(),
                   ParamInterval::positive_half_line(), cdf, logpdf);
}

MlrReport mlr_verify(const MlrFamily& family, std::span<const double> theta_grid,
                     std::span<const double> x_grid, double abs_tol) {
  if (theta_grid.size() < 2 || x_grid.size() < 2)
    throw std::domain_error("mlr_verify: grids need at least two points");
  for (std::size_t i = 1; i < theta_grid.size(); ++i)
    if (!(theta_grid[i - 1] < theta_grid[i]))
      throw std::domain_error("mlr_verify: theta grid must be strictly increasing");
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (!(x_grid[i - 1] < x_grid[i]))
      throw std::domain_error("mlr_verify: x grid must be strictly increasing");

  for (std::size_t a = 0; a < theta_grid.size(); ++a) {
    for (std::size_t b = a + 1; b < theta_grid.size(); ++b) {
      double prev = 0.0;
      for (std::size_t k = 0; k < x_grid.size(); ++k) {
        double delta = family.log_density(theta_grid[b], x_grid[k]) -
                       family.log_density(theta_grid[a], x_grid[k]);
        if (k > 0 && !(delta - prev > abs_tol)) {
          MlrReport report;
          report.ok = false;
          report.violation = MlrViolation{theta_grid[a], theta_grid[b],
                                          x_grid[k - 1], x_grid[k], prev, delta};
          return report;
        }
        prev = delta;
      }
    }
  }
  return {};
}

BoundaryReport boundary_limits_check(const MlrFamily& family, double x,
                                     std::span<const double> upper_probes,
                                     std::span<const double> lower_probes,
                                     double abs_tol) {
  if (!(abs_tol > 0.0))
    throw std::domain_error("boundary_limits_check: abs_tol must be > 0");
  BoundaryReport report;
  const ParamInterval& dom = family.theta_domain();
  if (!dom.upper_closed) {
    report.upper_checked = true;
    report.upper_ok = false;
    for (double theta : upper_probes) {
      report.upper_value = family.cdf(theta, x);
      if (report.upper_value <= abs_tol) {
        report.upper_ok = true;
        break;
      }
    }
    if (upper_probes.empty()) report.upper_ok = false;
  }
  if (!dom.lower_closed) {
    report.lower_checked = true;
    report.lower_ok = false;
    for (double theta : lower_probes) {
      report.lower_value = family.cdf(theta, x);
      if (1.0 - report.lower_value <= abs_tol) {
        report.lower_ok = true;
        break;
      }
    }
    if (lower_probes.empty()) report.lower_ok = false;
  }
  return report;
}

BoundaryReport boundary_limits_check(const MlrFamily& family, double x,
                                     double abs_tol) {
  const ParamInterval& dom = family.theta_domain();
  double ref = dom.contains(1.0) ? 1.0
               : dom.contains(0.0)
                   ? 0.0
                   : (std::isfinite(dom.lower) && std::isfinite(dom.upper)
                          ? 0.5 * (dom.lower + dom.upper)
                          : (std::isfinite(dom.lower) ? dom.lower + 1.0
                                                      : dom.upper - 1.0));
  std::vector<double> up, down;
  if (!dom.upper_closed) {
    if (std::isinf(dom.upper)) {
      for (double step = 1.0; step <= 262144.0; step *= 2.0) up.push_back(ref + step);
    } else {
      double span = dom.upper - (std::isfinite(dom.lower) ? dom.lower : ref);
      for (int k = 1; k <= 48; ++k) up.push_back(dom.upper - span * std::ldexp(1.0, -k));
    }
  }
  if (!dom.lower_closed) {
    if (std::isinf(dom.lower)) {
      for (double step = 1.0; step <= 262144.0; step *= 2.0) down.push_back(ref - step);
    } else {
      double span = (std::isfinite(dom.upper) ? dom.upper : ref + 1.0) - dom.lower;
      for (int k = 1; k <= 48; ++k) down.push_back(dom.lower + span * std::ldexp(1.0, -k));
    }
  }
  return boundary_limits_check(family, x, up, down, abs_tol);
}

}  // namespace expertvote::models
