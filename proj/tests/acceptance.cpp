// Acceptance suite: runs every acceptance criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "expertvote/nuisance.hpp"
#include "expertvote/oracle.hpp"
#include "expertvote/votes.hpp"

using namespace expertvote;
using specfun::normal_cdf;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

int failures = 0;

void report(int id, bool pass, const char* label) {
  std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", id, label);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

models::MlrFamily truncated_theta_fixture() {
  auto cdf = [](double theta, double x) { return normal_cdf(x - theta); };
  auto logpdf = [](double theta, double x) {
    double z = x - theta;
    return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
  };
  return models::MlrFamily("truncated_normal_theta",
                           models::ParamInterval{0.0, 1.0, false, true},
                           models::ParamInterval::real_line(), cdf, logpdf);
}

double noncentral_gamma_cdf(double p, double theta, double ups, double t) {
  auto w = specfun::poisson_weights(theta / ups);
  double s = 0.0;
  for (std::size_t i = 0; i < w.weights.size(); ++i)
    s += w.weights[i] *
         specfun::reg_lower_gamma(p + double(w.start_index + long(i)), t / ups);
  return s;
}

double anova_vote_by_quadrature(const nuisance::GammaPairModel& model,
                                const nuisance::GhostSample& sample, double theta) {
  nuisance::MixingDistribution mix = nuisance::inverse_gamma_mixing(
      model.q, sample.u, nuisance::GammaConvention::gamma_rate);
  auto integrand = [&](double ups) {
    double w = mix.density(ups);
    if (w == 0.0) return 0.0;
    return (1.0 - noncentral_gamma_cdf(model.p, theta, ups, sample.t)) * w;
  };
  return specfun::quadrature(integrand, 0.0, kInf, specfun::Tolerance{1e-9});
}

}  // namespace

int main() {
  auto suite_start = std::chrono::steady_clock::now();

  // 1. The three symmetric-vote p-values of the introduction example.
  {
    auto t0 = std::chrono::steady_clock::now();
    double a = votes::bilateral_vote_symmetric_normal(0.5, 0.0, 2.18, 1.0).q0;
    double b = votes::bilateral_vote_symmetric_normal(0.0, 0.5, 2.18, 1.0).q0;
    double c = votes::bilateral_vote_symmetric_normal(-0.15, 0.67, 2.18, 1.0).q0;
    bool pass = std::fabs(a - 0.0930) <= 5e-4 && std::fabs(b - 0.0502) <= 5e-4 &&
                std::fabs(c - 0.0498) <= 5e-4 && seconds_since(t0) < 1.0;
    report(1, pass, "symmetric triple at x=2.18 is (0.0930, 0.0502, 0.0498) +- 5e-4");
  }

  // 2. The compatible votes order the nested hypotheses correctly.
  {
    auto t0 = std::chrono::steady_clock::now();
    models::MlrFamily normal = models::normal_location(1.0);
    double a = votes::bilateral_vote_compatible(
                   votes::BilateralSplit(normal, 0.5, 0.5), 2.18).q0;
    double b = votes::bilateral_vote_compatible(
                   votes::BilateralSplit(normal, -0.5, 0.5), 2.18).q0;
    double c = votes::bilateral_vote_compatible(
                   votes::BilateralSplit(normal, -0.82, 0.52), 2.18).q0;
    bool pass = a <= b && b <= c && seconds_since(t0) < 1.0;
    report(2, pass, "compatible q0 is nondecreasing over the nested hypotheses");
  }

  // 3. The normal inductive distribution is N(x,1).
  {
    models::MlrFamily normal = models::normal_location(1.0);
    votes::InductiveDistribution q = votes::inductive_distribution(normal, 2.18);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      double theta = -2.18 + 8.36 * double(i) / 400.0;
      worst = std::max(worst, std::fabs(q.cdf_at(theta) - normal_cdf(theta - 2.18)));
    }
    report(3, worst <= 1e-10, "normal inductive CDF matches Phi(theta - x) to 1e-10");
  }

  // 4. Student votes equal their quadrature mixture.
  {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n : {3, 5, 10}) {
      nuisance::NormalSummary s{n, 1.2, 0.8};
      for (int j = 0; j <= 10; ++j) {
        double theta = -1.5 + 0.54 * double(j);
        worst = std::max(worst, std::fabs(nuisance::student_vote(s, theta) -
                                          nuisance::student_vote_quadrature(s, theta)));
      }
    }
    bool pass = worst <= 1e-6 && seconds_since(t0) < 30.0;
    report(4, pass, "student_vote vs quadrature mixture within 1e-6");
  }

  // 5. The gamma-pair series against the nuisance quadrature oracle.
  {
    bool pass = true;
    nuisance::GhostSample sample{3.0, 5.0};
    for (auto [p, q] : std::vector<std::pair<double, double>>{{1.5, 5.0}, {2.0, 2.0}}) {
      nuisance::GammaPairModel model{p, q};
      for (double theta : {0.0, 0.5, 2.0, 10.0}) {
        double series = nuisance::anova_vote_series(model, sample, theta);
        double oracle = anova_vote_by_quadrature(model, sample, theta);
        pass = pass && std::fabs(series - oracle) <= 1e-6;
      }
      double atom = nuisance::anova_point_mass(model, sample);
      pass = pass && std::fabs(nuisance::anova_vote_series(model, sample, 0.0) - atom) <= 1e-12;
      double r = sample.t / sample.u;
      pass = pass &&
             std::fabs(atom - (1.0 - specfun::reg_inc_beta(p, q, r / (1.0 + r)))) <= 1e-10;
    }
    report(5, pass, "anova series vs quadrature oracle within 1e-6, exact atom");
  }

  // 6. Neutrality of the boundary vote under P_theta1.
  {
    models::MlrFamily normal = models::normal_location(1.0);
    votes::OneSidedSplit split(normal, 0.5);
    oracle::SplitMix64 rng(20250809);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = normal.quantile(0.5, rng.next_unit());
      sum += votes::neutral_vote(split, x).q1;
    }
    oracle::UniformityReport ks = oracle::uniformity_check(normal, 0.5, n, 20250809);
    bool pass = std::fabs(sum / n - 0.5) <= 0.005 && ks.pass;
    report(6, pass, "Monte Carlo neutral q1 mean 0.5 +- 0.005 and KS uniform at 1%");
  }

  // 7. Threshold rules are experts; a gap rule is refuted deterministically.
  {
    models::MlrFamily normal = models::normal_location(1.0);
    std::vector<std::pair<double, double>> pairs{{-0.5, 0.5}, {0.0, 1.0}};
    bool pass = true;
    for (double t : {-1.0, 0.4, 1.3})
      pass = pass && oracle::expert_check(normal,
                                          oracle::DecisionRule::threshold(
                                              normal.support(), t),
                                          0.0, pairs)
                         .pass;
    oracle::DecisionRule gap =
        oracle::parse_decision_rule("(-inf,0)u(1,2)", normal.support());
    oracle::ExpertCheckResult first = oracle::expert_check(normal, gap, 0.0, pairs);
    oracle::ExpertCheckResult second = oracle::expert_check(normal, gap, 0.0, pairs);
    pass = pass && !first.pass && first.witness.has_value() &&
           second.witness.has_value() &&
           first.witness->t_split == second.witness->t_split &&
           first.witness->lhs == second.witness->lhs &&
           first.witness->rhs == second.witness->rhs;
    report(7, pass, "threshold rules pass expert_check; gap rule yields a witness");
  }

  // 8. Compatibility limit conditions.
  {
    bool pass = models::boundary_limits_check(models::normal_location(1.0), 2.18).ok() &&
                models::boundary_limits_check(models::gamma_scale(2.0, 2.0), 1.0).ok() &&
                !models::boundary_limits_check(truncated_theta_fixture(), 2.18).ok();
    report(8, pass, "boundary limits pass for normal and gamma, fail for truncated Theta");
  }

  // 9. The suite itself stays within the runtime budget.
  {
    double elapsed = seconds_since(suite_start);
    std::printf("      (acceptance suite elapsed: %.2f s)\n", elapsed);
    report(9, elapsed < 300.0, "acceptance suite completes in under 5 minutes");
  }

  return failures == 0 ? 0 : 1;
}
