// expertvote: expert-vote probabilities, inductive CDFs and verification
// suites for monotone-likelihood-ratio models.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "expertvote/nuisance.hpp"
#include "expertvote/oracle.hpp"
#include "expertvote/votes.hpp"

using namespace expertvote;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCompatibility = 4;

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct ToleranceFlags {
  double abs_tol = 1e-10;
  double series_tail = 1e-13;
  int max_terms = 10000;

  specfun::Tolerance tolerance() const { return {abs_tol, series_tail, max_terms}; }
  specfun::Tolerance series_tolerance(double default_tail) const {
    double tail = series_tail == 1e-13 ? default_tail : series_tail;
    return {abs_tol, tail, max_terms};
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--abs-tol", abs_tol, "absolute error target");
    cmd->add_option("--series-tail", series_tail, "series tail mass cutoff");
    cmd->add_option("--max-terms", max_terms, "series / subdivision cap");
  }
};

struct ModelFlags {
  std::string model;
  double sigma = 1.0;
  double shape = 0.0, scale_mult = 0.0;
  double p = 0.0, q = 0.0, k = 0.0, l = 0.0;
  int n = 0;
  double mean = 0.0, s2 = 0.0;
  std::vector<double> restrict_theta;

  void attach(CLI::App* cmd, bool summaries) {
    auto* opt = cmd->add_option("--model", model,
                                summaries
                                    ? "family: normal, gamma, beta, chi2one, anova, student"
                                    : "family: normal, gamma, beta, chi2one, anova");
    opt->required();
    cmd->add_option("--sigma", sigma, "normal: scale (default 1)");
    cmd->add_option("--shape", shape, "gamma: shape p");
    cmd->add_option("--scale-mult", scale_mult, "gamma: scale multiplier m (scale = m*theta)");
    cmd->add_option("--p", p, "beta/anova: first shape");
    cmd->add_option("--q", q, "beta/anova: second shape");
    cmd->add_option("--k", k, "beta/anova: numerator dof (p = k/2)");
    cmd->add_option("--l", l, "beta/anova: denominator dof (q = l/2)");
    if (summaries) {
      cmd->add_option("--n", n, "student: sample size");
      cmd->add_option("--mean", mean, "student: sample mean");
      cmd->add_option("--s2", s2, "student: sample variance (1/(n-1) convention)");
    }
    cmd->add_option("--restrict-theta", restrict_theta,
                    "restrict the parameter interval to (lo, hi]")
        ->expected(2);
  }

  std::pair<double, double> beta_shapes() const {
    if (p > 0.0 && q > 0.0) return {p, q};
    if (k > 0.0 && l > 0.0) return {0.5 * k, 0.5 * l};
    throw std::domain_error("model requires --p/--q or --k/--l");
  }

  models::MlrFamily build(const specfun::Tolerance& tol) const {
    std::optional<models::MlrFamily> family;
    if (model == "normal") {
      family = models::normal_location(sigma);
    } else if (model == "gamma") {
      if (!(shape > 0.0) || !(scale_mult > 0.0))
        throw std::domain_error("gamma model requires --shape and --scale-mult");
      family = models::gamma_scale(shape, scale_mult);
    } else if (model == "beta") {
      auto [bp, bq] = beta_shapes();
      family = models::noncentral_beta(bp, bq, tol);
    } else if (model == "chi2one") {
      family = models::noncentral_chi2_one(tol);
    } else {
      throw std::domain_error("model '" + model + "' has no plain-family form here");
    }
    if (!restrict_theta.empty()) {
      const models::MlrFamily base = *family;
      models::ParamInterval dom{restrict_theta[0], restrict_theta[1], false, true};
      dom.validate();
      if (!base.theta_domain().contains(restrict_theta[1]))
        throw std::domain_error("--restrict-theta interval leaves the parameter interval");
      std::ostringstream tag;
      tag << base.family_tag() << "|theta in (" << restrict_theta[0] << ","
          << restrict_theta[1] << "]";
      family = models::MlrFamily(
          tag.str(), dom, base.support(),
          [base](double theta, double x) { return base.cdf(theta, x); },
          [base](double theta, double x) { return base.log_density(theta, x); });
    }
    return *family;
  }
};

void print_vote_json(const std::string& model, const std::string& hypothesis,
                     const std::string& x_json, votes::VoteResult v) {
  std::printf(
      "{\"model\":\"%s\",\"hypothesis\":\"%s\",\"x\":%s,"
      "\"q0\":%s,\"q1\":%s,\"labels\":{\"q0\":\"p-value of H0\","
      "\"q1\":\"p-value of H0'\"}}\n",
      model.c_str(), hypothesis.c_str(), x_json.c_str(), f6(v.q0).c_str(),
      f6(v.q1).c_str());
}

void print_vote_csv(votes::VoteResult v) {
  std::printf("q0,q1\n%s,%s\n", f6(v.q0).c_str(), f6(v.q1).c_str());
}

struct VoteConfig {
  ModelFlags model;
  ToleranceFlags tol;
  std::string format = "json";
  std::optional<double> x;
  std::optional<double> one_sided;
  std::optional<double> ncp_lambda;
  std::vector<double> bilateral;
  std::optional<double> symmetric_c;
  std::optional<double> lambda1;
  std::optional<double> theta;
  std::optional<double> t, u;
};

int run_vote(const VoteConfig& cfg) {
  int hypotheses = int(cfg.one_sided.has_value() || cfg.ncp_lambda.has_value()) +
                   int(!cfg.bilateral.empty()) + int(cfg.symmetric_c.has_value()) +
                   int(cfg.theta.has_value());
  if (hypotheses != 1)
    throw std::domain_error(
        "exactly one hypothesis: --one-sided | --bilateral | --symmetric-c | --theta");

  votes::VoteResult v;
  std::string model_desc, hyp_desc, x_json;

  if (cfg.model.model == "student") {
    if (!cfg.theta)
      throw std::domain_error("student model takes --theta for the one-sided boundary");
    nuisance::NormalSummary s{cfg.model.n, cfg.model.mean, cfg.model.s2};
    double q1 = nuisance::student_vote(s, *cfg.theta);
    v = {1.0 - q1, q1};
    std::ostringstream m;
    m << "student(n=" << s.n << ")";
    model_desc = m.str();
    hyp_desc = "one-sided theta1=" + f6(*cfg.theta);
    x_json = "{\"n\":" + std::to_string(s.n) + ",\"mean\":" + f6(s.mean) +
             ",\"s2\":" + f6(s.s2) + "}";
  } else if (cfg.model.model == "anova") {
    if (!cfg.theta)
      throw std::domain_error("anova model takes --theta for the hypothesis [0,theta]");
    if (!cfg.t || !cfg.u) throw std::domain_error("anova model requires --t and --u");
    auto [p, q] = cfg.model.beta_shapes();
    nuisance::GammaPairModel model{p, q};
    nuisance::GhostSample sample{*cfg.t, *cfg.u};
    double q1 = nuisance::anova_vote_series(model, sample, *cfg.theta,
                                            cfg.tol.series_tolerance(1e-12));
    v = {1.0 - q1, q1};
    model_desc = "anova(p=" + f6(p) + ",q=" + f6(q) + ")";
    hyp_desc = "one-sided theta in [0," + f6(*cfg.theta) + "]";
    x_json = "{\"t\":" + f6(sample.t) + ",\"u\":" + f6(sample.u) + "}";
  } else if (cfg.symmetric_c) {
    if (cfg.model.model != "normal")
      throw std::domain_error("the symmetric treatment applies to the normal model only");
    if (!cfg.x) throw std::domain_error("--x is required");
    double lambda1 = cfg.lambda1.value_or(0.0);
    v = votes::bilateral_vote_symmetric_normal(*cfg.symmetric_c, lambda1, *cfg.x,
                                               cfg.model.sigma);
    model_desc = models::normal_location(cfg.model.sigma).family_tag();
    hyp_desc = "symmetric c=" + f6(*cfg.symmetric_c) + " lambda1=" + f6(lambda1);
    x_json = f6(*cfg.x);
  } else {
    models::MlrFamily family = cfg.model.build(cfg.tol.tolerance());
    if (!cfg.x) throw std::domain_error("--x is required");
    model_desc = family.family_tag();
    x_json = f6(*cfg.x);
    if (!cfg.bilateral.empty()) {
      votes::BilateralSplit split(family, cfg.bilateral[0], cfg.bilateral[1]);
      v = votes::bilateral_vote_compatible(split, *cfg.x);
      hyp_desc = "bilateral [" + f6(split.theta1()) + "," + f6(split.theta2()) + "]";
    } else {
      double theta1;
      if (cfg.ncp_lambda) {
        if (cfg.model.model != "beta")
          throw std::domain_error("--ncp-lambda converts to theta for the beta model only");
        theta1 = 0.5 * (*cfg.ncp_lambda) * (*cfg.ncp_lambda);
      } else {
        theta1 = *cfg.one_sided;
      }
      v = votes::neutral_vote(votes::OneSidedSplit(family, theta1), *cfg.x);
      hyp_desc = "one-sided theta1=" + f6(theta1);
    }
  }

  if (cfg.format == "csv")
    print_vote_csv(v);
  else
    print_vote_json(model_desc, hyp_desc, x_json, v);
  return kExitOk;
}

struct InductiveConfig {
  ModelFlags model;
  ToleranceFlags tol;
  std::string format = "csv";
  std::optional<double> x;
  std::optional<double> t, u;
  std::vector<double> grid;
  std::optional<double> grid_from, grid_to;
  int grid_n = 0;
};

int run_inductive(const InductiveConfig& cfg) {
  std::vector<double> grid = cfg.grid;
  if (grid.empty()) {
    if (!cfg.grid_from || !cfg.grid_to || cfg.grid_n < 2)
      throw std::domain_error("provide --grid or --grid-from/--grid-to/--grid-n");
    for (int i = 0; i < cfg.grid_n; ++i)
      grid.push_back(*cfg.grid_from + (*cfg.grid_to - *cfg.grid_from) * double(i) /
                     double(cfg.grid_n - 1));
  }

  std::string model_desc, x_desc, x_json;
  std::vector<double> cdf(grid.size());
  if (cfg.model.model == "anova") {
    if (!cfg.t || !cfg.u) throw std::domain_error("anova model requires --t and --u");
    auto [p, q] = cfg.model.beta_shapes();
    nuisance::AnovaInductiveDistribution dist = nuisance::anova_inductive_distribution(
        {p, q}, {*cfg.t, *cfg.u}, cfg.tol.series_tolerance(1e-12));
    for (double theta : grid)
      if (theta < 0.0) throw std::domain_error("anova grid must stay in [0, inf)");
    for (std::size_t i = 0; i < grid.size(); ++i) cdf[i] = dist.cdf_at(grid[i]);
    model_desc = "anova(p=" + f6(p) + ",q=" + f6(q) + ")";
    x_desc = "t=" + f6(*cfg.t) + " u=" + f6(*cfg.u);
    x_json = "\"t\":" + f6(*cfg.t) + ",\"u\":" + f6(*cfg.u);
  } else {
    models::MlrFamily family = cfg.model.build(cfg.tol.tolerance());
    if (!cfg.x) throw std::domain_error("--x is required");
    for (double theta : grid)
      if (!family.theta_domain().contains(theta))
        throw std::domain_error("grid point outside the parameter interval");
    votes::InductiveDistribution dist = votes::inductive_distribution(family, *cfg.x);
    for (std::size_t i = 0; i < grid.size(); ++i) cdf[i] = dist.cdf_at(grid[i]);
    model_desc = family.family_tag();
    x_desc = "x=" + f6(*cfg.x);
    x_json = "\"x\":" + f6(*cfg.x);
  }

  if (cfg.format == "json") {
    std::string rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i) rows += ",";
      rows += "{\"theta\":" + f6(grid[i]) + ",\"cdf\":" + f6(cdf[i]) + "}";
    }
    std::printf("{\"model\":\"%s\",%s,\"rows\":[%s]}\n", model_desc.c_str(),
                x_json.c_str(), rows.c_str());
  } else {
    std::printf("# model=%s %s\n", model_desc.c_str(), x_desc.c_str());
    std::printf("theta,cdf\n");
    for (std::size_t i = 0; i < grid.size(); ++i)
      std::printf("%s,%s\n", f6(grid[i]).c_str(), f6(cdf[i]).c_str());
  }
  return kExitOk;
}

int run_demo() {
  struct Row {
    const char* label;
    double c, lambda1, theta1, theta2;
    double quoted;
  };
  const Row rows[3] = {
      {"{0.50}         ", 0.5, 0.0, 0.5, 0.5, 0.0930},
      {"[-0.50, 0.50]  ", 0.0, 0.5, -0.5, 0.5, 0.0502},
      {"[-0.82, 0.52]  ", -0.15, 0.67, -0.82, 0.52, 0.0498},
  };
  const double x = 2.18;
  models::MlrFamily normal = models::normal_location(1.0);

  std::printf("Schervish (1996) example: X ~ N(theta,1), x = %.2f\n", x);
  std::printf("unbiased-test p-values (symmetric expert votes):\n");
  bool match = true;
  for (const Row& r : rows) {
    double q0 = votes::bilateral_vote_symmetric_normal(r.c, r.lambda1, x, 1.0).q0;
    match = match && std::llround(q0 * 1e4) == std::llround(r.quoted * 1e4);
    std::printf("  Theta_0 = %s q0 = %s   (quoted %.4f)\n", r.label, f6(q0).c_str(),
                r.quoted);
  }
  std::printf("  -> decreasing under nesting: the incoherence\n");
  std::printf("compatible votes q0 = Q^x([theta1,theta2]) from the inductive N(%.2f,1):\n",
              x);
  double prev = -1.0;
  bool monotone = true;
  for (const Row& r : rows) {
    double q0 = votes::bilateral_vote_compatible(
                    votes::BilateralSplit(normal, r.theta1, r.theta2), x)
                    .q0;
    monotone = monotone && q0 >= prev;
    prev = q0;
    std::printf("  Theta_0 = %s q0 = %s\n", r.label, f6(q0).c_str());
  }
  std::printf("  -> %s under nesting\n", monotone ? "nondecreasing" : "NOT monotone");
  return match ? kExitOk : kExitMismatch;
}

struct CheckConfig {
  std::uint64_t seed = 20250809;
  int n_samples = 10000;
  std::string rule_text;
  double boundary = 0.0;
  ToleranceFlags tol;
};

int run_check(const CheckConfig& cfg) {
  std::vector<double> linspace;
  auto fill = [&linspace](double a, double b, int n) {
    linspace.clear();
    for (int i = 0; i < n; ++i)
      linspace.push_back(a + (b - a) * double(i) / double(n - 1));
    return std::span<const double>(linspace);
  };

  std::string checks;
  bool all_pass = true;
  auto add = [&](const std::string& name, bool pass, const std::string& extra = "") {
    if (!checks.empty()) checks += ",";
    checks += "{\"name\":\"" + name + "\",\"pass\":" + (pass ? "true" : "false");
    if (!extra.empty()) checks += "," + extra;
    checks += "}";
    all_pass = all_pass && pass;
  };

  {
    std::vector<double> thetas{-1.0, 0.0, 0.5, 1.5};
    add("mlr_normal_location",
        models::mlr_verify(models::normal_location(1.0), thetas, fill(-4.0, 4.0, 17)).ok);
    std::vector<double> ups{0.5, 1.0, 2.0};
    add("mlr_gamma_scale",
        models::mlr_verify(models::gamma_scale(2.0, 2.0), ups, fill(0.1, 8.0, 17)).ok);
    std::vector<double> ncp{0.0, 1.0, 2.0};
    add("mlr_noncentral_beta",
        models::mlr_verify(models::noncentral_beta(2.0, 3.0), ncp, fill(0.1, 8.0, 17)).ok);
    std::vector<double> lam{0.0, 0.5, 1.5};
    add("mlr_noncentral_chi2_one",
        models::mlr_verify(models::noncentral_chi2_one(), lam, fill(0.2, 10.0, 17)).ok);
  }

  add("boundary_normal_location",
      models::boundary_limits_check(models::normal_location(1.0), 2.18).ok());
  add("boundary_gamma_scale",
      models::boundary_limits_check(models::gamma_scale(2.0, 2.0), 1.0).ok());

  {
    oracle::UniformityReport r = oracle::uniformity_check(
        models::normal_location(1.0), 0.5, cfg.n_samples, cfg.seed);
    add("uniformity_normal_location", r.pass,
        "\"ks\":" + f6(r.ks_statistic) + ",\"critical\":" + f6(r.critical_value));
  }

  {
    models::MlrFamily normal = models::normal_location(1.0);
    std::vector<std::pair<double, double>> pairs{
        {cfg.boundary - 0.5, cfg.boundary + 0.5}, {cfg.boundary, cfg.boundary + 1.0}};
    oracle::ExpertCheckResult threshold = oracle::expert_check(
        normal, oracle::DecisionRule::threshold(normal.support(), 1.3), cfg.boundary,
        pairs);
    add("expert_threshold_rule", threshold.pass);

    if (!cfg.rule_text.empty()) {
      oracle::DecisionRule rule =
          oracle::parse_decision_rule(cfg.rule_text, normal.support());
      oracle::ExpertCheckResult r =
          oracle::expert_check(normal, rule, cfg.boundary, pairs);
      std::string extra;
      if (r.witness) {
        std::string event;
        for (const auto& [lo, hi] : r.witness->event.parts()) {
          if (!event.empty()) event += "u";
          event += "(" + f6(lo) + "," + f6(hi) + ")";
        }
        extra = "\"witness\":{\"event\":\"" + event +
                "\",\"t_split\":" + f6(r.witness->t_split) +
                ",\"theta1\":" + f6(r.witness->theta1) +
                ",\"theta0\":" + f6(r.witness->theta0) +
                ",\"lhs\":" + f6(r.witness->lhs) + ",\"rhs\":" + f6(r.witness->rhs) + "}";
      }
      add("expert_rule", r.pass, extra);
    }
  }

  std::printf("{\"seed\":%llu,\"n_samples\":%d,\"checks\":[%s],\"pass\":%s}\n",
              static_cast<unsigned long long>(cfg.seed), cfg.n_samples, checks.c_str(),
              all_pass ? "true" : "false");
  return all_pass ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "expert-vote probabilities for one-sided and bilateral hypotheses in "
      "monotone-likelihood-ratio models"};
  app.require_subcommand(1);
  app.footer(
      "Interval grammar for --rule: intervals '(a,b)' or '[a,b]' joined by 'u',\n"
      "with 'inf'/'-inf' endpoints, e.g. \"(-inf,0)u(1,2)\".");

  VoteConfig vote_cfg;
  CLI::App* vote = app.add_subcommand("vote", "compute a vote (q0, q1)");
  vote_cfg.model.attach(vote, true);
  vote_cfg.tol.attach(vote);
  vote->add_option("--format", vote_cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  vote->add_option("--x", vote_cfg.x, "realization of X");
  vote->add_option("--one-sided", vote_cfg.one_sided, "boundary theta1 of (-inf,theta1]");
  vote->add_option("--ncp-lambda", vote_cfg.ncp_lambda,
                   "beta: boundary given as noncentrality lambda (theta1 = lambda^2/2)");
  vote->add_option("--bilateral", vote_cfg.bilateral, "theta1 theta2 of [theta1,theta2]")
      ->expected(2);
  auto* sym_c = vote->add_option("--symmetric-c", vote_cfg.symmetric_c, "symmetry centre c");
  vote->add_option("--lambda1", vote_cfg.lambda1, "half-width lambda1 (with --symmetric-c)")
      ->needs(sym_c);
  vote->add_option("--theta", vote_cfg.theta, "anova/student hypothesis boundary");
  vote->add_option("--t", vote_cfg.t, "anova: realization of T");
  vote->add_option("--u", vote_cfg.u, "anova: realization of U");

  InductiveConfig ind_cfg;
  CLI::App* inductive =
      app.add_subcommand("inductive", "tabulate the inductive CDF over a theta grid");
  ind_cfg.model.attach(inductive, false);
  ind_cfg.tol.attach(inductive);
  inductive->add_option("--format", ind_cfg.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  inductive->add_option("--x", ind_cfg.x, "realization of X");
  inductive->add_option("--t", ind_cfg.t, "anova: realization of T");
  inductive->add_option("--u", ind_cfg.u, "anova: realization of U");
  inductive->add_option("--grid", ind_cfg.grid, "explicit theta grid")->expected(-1);
  inductive->add_option("--grid-from", ind_cfg.grid_from, "grid start");
  inductive->add_option("--grid-to", ind_cfg.grid_to, "grid end");
  inductive->add_option("--grid-n", ind_cfg.grid_n, "grid size");

  CLI::App* demo = app.add_subcommand(
      "demo-schervish", "reproduce the Schervish p-value triple and its repair");

  CheckConfig check_cfg;
  CLI::App* check = app.add_subcommand("check", "run the verification suites");
  check->add_option("--seed", check_cfg.seed, "RNG seed for the uniformity check");
  check->add_option("--n-samples", check_cfg.n_samples, "uniformity sample count");
  check->add_option("--rule", check_cfg.rule_text,
                    "additional decision rule to audit, e.g. \"(-inf,0)u(1,2)\"");
  check->add_option("--boundary", check_cfg.boundary, "one-sided boundary under audit");
  check_cfg.tol.attach(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (vote->parsed()) return run_vote(vote_cfg);
    if (inductive->parsed()) return run_inductive(ind_cfg);
    if (demo->parsed()) return run_demo();
    if (check->parsed()) return run_check(check_cfg);
  } catch (const compatibility_error& e) {
    std::fprintf(stderr, "compatibility error: %s\n", e.what());
    return kExitCompatibility;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
