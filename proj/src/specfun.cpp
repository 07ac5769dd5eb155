#include "expertvote/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <queue>

namespace expertvote::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lower incomplete gamma by its power series, valid for x < a + 1.
double gamma_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw numeric_error("reg_lower_gamma: series did not converge");
}

// Upper incomplete gamma by a modified-Lentz continued fraction, x >= a + 1.
double gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps)
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  }
  throw numeric_error("reg_lower_gamma: continued fraction did not converge");
}

// Incomplete beta continued fraction (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw numeric_error("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

void Tolerance::validate() const {
  if (!(abs_tol > 0.0)) throw std::domain_error("Tolerance: abs_tol must be > 0");
  if (!(series_tail > 0.0))
    throw std::domain_error("Tolerance: series_tail must be > 0");
  if (max_terms < 1) throw std::domain_error("Tolerance: max_terms must be >= 1");
}

double WeightedTerms::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double normal_cdf(double z) {
  if (!std::isfinite(z)) throw std::domain_error("normal_cdf: non-finite argument");
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("reg_lower_gamma: shape a must be finite and > 0");
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("reg_lower_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_cf(a, x);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::domain_error("reg_inc_beta: a and b must be finite and > 0");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("reg_inc_beta: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                   a * std::log(x) + b * std::log1p(-x);
  // Continued fraction converges fast on the dominant side; mirror otherwise.
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(lnfront) * beta_cf(a, b, x) / a;
  return 1.0 - std::exp(lnfront) * beta_cf(b, a, 1.0 - x) / b;
}

double student_cdf(double nu, double t) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw std::domain_error("student_cdf: nu must be finite and > 0");
  if (std::isnan(t)) throw std::domain_error("student_cdf: t is NaN");
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  double tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, nu / (nu + t * t));
  return t < 0.0 ? tail : 1.0 - tail;
}

WeightedTerms poisson_weights(double lambda, const Tolerance& tol) {
  tol.validate();
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("poisson_weights: lambda must be finite and >= 0");
  if (lambda == 0.0) return {0, {1.0}};
  const double target = 1.0 - tol.series_tail;

  // The recurrence and the running mass stay in extended precision: in plain
  // doubles the per-weight error grows with lambda and eats tail targets
  // near 1e-13 once lambda passes a few thousand.
  const long double lam = lambda;
  if (lambda < 32.0) {
    std::vector<double> w;
    long double wm = expl(-lam);
    long double total = wm;
    w.push_back(double(wm));
    long m = 0;
    while (total < target) {
      if (static_cast<long>(w.size()) >= tol.max_terms)
        throw truncation_error(
            "poisson_weights: mass target not reached within max_terms");
      wm *= lam / (long double)(m + 1);
      ++m;
      w.push_back(double(wm));
      total += wm;
    }
    return {0, std::move(w)};
  }

  // Large lambda: start from the modal index and extend toward whichever
  // side holds more of the remaining mass.
  long mode = static_cast<long>(std::floor(lambda));
  long double wmode = expl(mode * logl(lam) - lam - lgammal((long double)mode + 1.0L));
  std::deque<double> win{double(wmode)};
  long lo = mode, hi = mode;
  long double total = wmode;
  long double w_lo = wmode, w_hi = wmode;
  long double next_lo = lo > 0 ? w_lo * ((long double)lo / lam) : 0.0L;
  long double next_hi = w_hi * (lam / (long double)(hi + 1));
  while (total < target) {
    if (static_cast<long>(win.size()) >= tol.max_terms)
      throw truncation_error(
          "poisson_weights: mass target not reached within max_terms");
    if (next_lo <= 0.0L && next_hi <= 0.0L)
      throw truncation_error("poisson_weights: weights underflow before target");
    if (next_lo > next_hi && lo > 0) {
      win.push_front(double(next_lo));
      total += next_lo;
      w_lo = next_lo;
      --lo;
      next_lo = lo > 0 ? w_lo * ((long double)lo / lam) : 0.0L;
    } else {
      win.push_back(double(next_hi));
      total += next_hi;
      w_hi = next_hi;
      ++hi;
      next_hi = w_hi * (lam / (long double)(hi + 1));
    }
  }
  return {lo, std::vector<double>(win.begin(), win.end())};
}

namespace {

// QUADPACK dqk15 abscissae and weights on [-1,1].  Odd-indexed abscissae
// together with the centre form the embedded 7-point Gauss rule.
const double kXgk[8] = {0.9914553711208126, 0.9491079123427585,
                        0.8648644233597691, 0.7415311855993944,
                        0.5860872354676911, 0.4058451513773972,
                        0.2077849550078985, 0.0};
const double kWgk[8] = {0.02293532201052922, 0.06309209262997855,
                        0.1047900103222502,  0.1406532597155259,
                        0.1690047266392679,  0.1903505780647854,
                        0.2044329400752989,  0.2094821410847278};
const double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                       0.3818300505051189, 0.4179591836734694};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  if (std::isnan(fc)) throw quadrature_error("quadrature: integrand returned NaN");
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double f1 = f(c - dx);
    double f2 = f(c + dx);
    if (std::isnan(f1) || std::isnan(f2))
      throw quadrature_error("quadrature: integrand returned NaN");
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::fabs((resk - resg) * h)};
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b,
                  const Tolerance& tol) {
  tol.validate();
  if (std::isnan(a) || std::isnan(b))
    throw std::domain_error("quadrature: NaN integration limit");
  if (a == b) return 0.0;
  if (!(a < b)) throw std::domain_error("quadrature: requires a < b");

  // Map infinite endpoints onto a finite interval.
  std::function<double(double)> g;
  double lo, hi;
  bool ainf = std::isinf(a), binf = std::isinf(b);
  if (ainf && binf) {
    g = [&f](double t) {
      double s = 1.0 - t * t;
      return f(t / s) * (1.0 + t * t) / (s * s);
    };
    lo = -1.0;
    hi = 1.0;
  } else if (binf) {
    g = [&f, a](double t) {
      double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
    lo = 0.0;
    hi = 1.0;
  } else if (ainf) {
    g = [&f, b](double t) {
      double s = 1.0 - t;
      return f(b - t / s) / (s * s);
    };
    lo = 0.0;
    hi = 1.0;
  } else {
    g = f;
    lo = a;
    hi = b;
  }

  std::priority_queue<Segment> segments;
  segments.push(gk15(g, lo, hi));
  double total_value = segments.top().value;
  double total_error = segments.top().error;
  int splits = 0;
  const double min_width = (hi - lo) * 1e-14;
  while (total_error > tol.abs_tol) {
    if (splits >= tol.max_terms)
      throw quadrature_error("quadrature: subdivision budget exhausted");
    Segment worst = segments.top();
    segments.pop();
    if (worst.b - worst.a < min_width)
      throw quadrature_error("quadrature: interval too small to subdivide");
    double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(g, worst.a, mid);
    Segment right = gk15(g, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    segments.push(left);
    segments.push(right);
    ++splits;
  }
  return total_value;
}

}  // namespace expertvote::specfun
