#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expertvote/nuisance.hpp"
#include "expertvote/oracle.hpp"
#include "expertvote/votes.hpp"

namespace py = pybind11;
using namespace expertvote;

PYBIND11_MODULE(_core, m) {
  m.doc() = "expert-vote probabilities and inductive distributions for "
            "monotone-likelihood-ratio models";

  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<compatibility_error>(m, "CompatibilityError",
                                              PyExc_ValueError);

  py::class_<specfun::Tolerance>(m, "Tolerance")
      .def(py::init([](double abs_tol, double series_tail, int max_terms) {
             return specfun::Tolerance{abs_tol, series_tail, max_terms};
           }),
           py::arg("abs_tol") = 1e-10, py::arg("series_tail") = 1e-13,
           py::arg("max_terms") = 10000)
      .def_readwrite("abs_tol", &specfun::Tolerance::abs_tol)
      .def_readwrite("series_tail", &specfun::Tolerance::series_tail)
      .def_readwrite("max_terms", &specfun::Tolerance::max_terms);

  m.def("normal_cdf", &specfun::normal_cdf, py::arg("z"));
  m.def("reg_lower_gamma", &specfun::reg_lower_gamma, py::arg("a"), py::arg("x"));
  m.def("reg_inc_beta", &specfun::reg_inc_beta, py::arg("a"), py::arg("b"),
        py::arg("x"));
  m.def("student_cdf", &specfun::student_cdf, py::arg("nu"), py::arg("t"));
  m.def(
      "poisson_weights",
      [](double lam, const specfun::Tolerance& tol) {
        specfun::WeightedTerms w = specfun::poisson_weights(lam, tol);
        return py::make_tuple(w.start_index, w.weights);
      },
      py::arg("lam"), py::arg("tol") = specfun::Tolerance{},
      "returns (start_index, weights)");
  m.def(
      "quadrature",
      [](const std::function<double(double)>& f, double a, double b,
         const specfun::Tolerance& tol) { return specfun::quadrature(f, a, b, tol); },
      py::arg("f"), py::arg("a"), py::arg("b"),
      py::arg("tol") = specfun::Tolerance{1e-8});

  py::class_<models::ParamInterval>(m, "ParamInterval")
      .def(py::init([](double lower, double upper, bool lower_closed,
                       bool upper_closed) {
             models::ParamInterval p{lower, upper, lower_closed, upper_closed};
             p.validate();
             return p;
           }),
           py::arg("lower"), py::arg("upper"), py::arg("lower_closed") = false,
           py::arg("upper_closed") = false)
      .def_readonly("lower", &models::ParamInterval::lower)
      .def_readonly("upper", &models::ParamInterval::upper)
      .def_readonly("lower_closed", &models::ParamInterval::lower_closed)
      .def_readonly("upper_closed", &models::ParamInterval::upper_closed)
      .def("contains", &models::ParamInterval::contains, py::arg("v"));

  py::class_<models::MlrFamily>(m, "MlrFamily")
      .def(py::init<std::string, models::ParamInterval, models::ParamInterval,
                    models::MlrFamily::Field, models::MlrFamily::Field>(),
           py::arg("family_tag"), py::arg("theta_domain"), py::arg("support"),
           py::arg("cdf"), py::arg("log_density"))
      .def_property_readonly("family_tag", &models::MlrFamily::family_tag)
      .def_property_readonly("theta_domain", &models::MlrFamily::theta_domain)
      .def_property_readonly("support", &models::MlrFamily::support)
      .def("cdf", &models::MlrFamily::cdf, py::arg("theta"), py::arg("x"))
      .def("log_density", &models::MlrFamily::log_density, py::arg("theta"),
           py::arg("x"))
      .def("quantile", &models::MlrFamily::quantile, py::arg("theta"), py::arg("u"),
           py::arg("abs_tol") = 1e-10);

  m.def("normal_location", &models::normal_location, py::arg("sigma"));
  m.def("gamma_scale", &models::gamma_scale, py::arg("shape"),
        py::arg("scale_multiplier"));
  m.def("noncentral_beta", &models::noncentral_beta, py::arg("p"), py::arg("q"),
        py::arg("tol") = specfun::Tolerance{});
  m.def("noncentral_chi2_one", &models::noncentral_chi2_one,
        py::arg("tol") = specfun::Tolerance{});

  py::class_<models::MlrViolation>(m, "MlrViolation")
      .def_readonly("theta_lo", &models::MlrViolation::theta_lo)
      .def_readonly("theta_hi", &models::MlrViolation::theta_hi)
      .def_readonly("x_prev", &models::MlrViolation::x_prev)
      .def_readonly("x_next", &models::MlrViolation::x_next)
      .def_readonly("delta_prev", &models::MlrViolation::delta_prev)
      .def_readonly("delta_next", &models::MlrViolation::delta_next);
  py::class_<models::MlrReport>(m, "MlrReport")
      .def_readonly("ok", &models::MlrReport::ok)
      .def_readonly("violation", &models::MlrReport::violation)
      .def("__bool__", [](const models::MlrReport& r) { return r.ok; });
  m.def(
      "mlr_verify",
      [](const models::MlrFamily& family, const std::vector<double>& thetas,
         const std::vector<double>& xs, double abs_tol) {
        return models::mlr_verify(family, thetas, xs, abs_tol);
      },
      py::arg("family"), py::arg("theta_grid"), py::arg("x_grid"),
      py::arg("abs_tol") = 1e-10);

  py::class_<models::BoundaryReport>(m, "BoundaryReport")
      .def_readonly("upper_checked", &models::BoundaryReport::upper_checked)
      .def_readonly("upper_ok", &models::BoundaryReport::upper_ok)
      .def_readonly("lower_checked", &models::BoundaryReport::lower_checked)
      .def_readonly("lower_ok", &models::BoundaryReport::lower_ok)
      .def_readonly("upper_value", &models::BoundaryReport::upper_value)
      .def_readonly("lower_value", &models::BoundaryReport::lower_value)
      .def("__bool__", [](const models::BoundaryReport& r) { return r.ok(); });
  m.def(
      "boundary_limits_check",
      [](const models::MlrFamily& family, double x, double abs_tol) {
        return models::boundary_limits_check(family, x, abs_tol);
      },
      py::arg("family"), py::arg("x"), py::arg("abs_tol") = 1e-9);

  py::class_<votes::VoteResult>(m, "VoteResult")
      .def_readonly("q0", &votes::VoteResult::q0)
      .def_readonly("q1", &votes::VoteResult::q1)
      .def("__repr__", [](const votes::VoteResult& v) {
        return "VoteResult(q0=" + std::to_string(v.q0) +
               ", q1=" + std::to_string(v.q1) + ")";
      });

  m.def(
      "vote_at",
      [](const models::MlrFamily& family, double theta, double boundary, double x) {
        return votes::vote_at(family, theta, boundary, x);
      },
      py::arg("family"), py::arg("theta"), py::arg("boundary"), py::arg("x"));
  m.def(
      "neutral_vote",
      [](const models::MlrFamily& family, double boundary, double x) {
        return votes::neutral_vote(votes::OneSidedSplit(family, boundary), x);
      },
      py::arg("family"), py::arg("boundary"), py::arg("x"));
  m.def(
      "coherence_check",
      [](const models::MlrFamily& family, double x, const std::vector<double>& bs,
         double abs_tol) { return votes::coherence_check(family, x, bs, abs_tol); },
      py::arg("family"), py::arg("x"), py::arg("boundaries"),
      py::arg("abs_tol") = 1e-10);

  py::class_<votes::InductiveDistribution>(m, "InductiveDistribution")
      .def("cdf_at", &votes::InductiveDistribution::cdf_at, py::arg("theta"))
      .def("prob", &votes::InductiveDistribution::prob, py::arg("a"), py::arg("b"))
      .def_property_readonly("realization",
                             &votes::InductiveDistribution::realization);
  m.def("inductive_distribution", &votes::inductive_distribution, py::arg("family"),
        py::arg("x"));

  m.def(
      "bilateral_vote_compatible",
      [](const models::MlrFamily& family, double theta1, double theta2, double x) {
        return votes::bilateral_vote_compatible(
            votes::BilateralSplit(family, theta1, theta2), x);
      },
      py::arg("family"), py::arg("theta1"), py::arg("theta2"), py::arg("x"));
  m.def("bilateral_vote_symmetric_normal", &votes::bilateral_vote_symmetric_normal,
        py::arg("c"), py::arg("lambda1"), py::arg("x"), py::arg("sigma") = 1.0);
  m.def("symmetric_vote_via_chi2", &votes::symmetric_vote_via_chi2, py::arg("c"),
        py::arg("lambda1"), py::arg("x"), py::arg("tol") = specfun::Tolerance{});

  py::class_<nuisance::GhostSample>(m, "GhostSample")
      .def(py::init([](double t, double u) { return nuisance::GhostSample{t, u}; }),
           py::arg("t"), py::arg("u"))
      .def_readonly("t", &nuisance::GhostSample::t)
      .def_readonly("u", &nuisance::GhostSample::u);
  py::class_<nuisance::NormalSummary>(m, "NormalSummary")
      .def(py::init([](int n, double mean, double s2) {
             return nuisance::NormalSummary{n, mean, s2};
           }),
           py::arg("n"), py::arg("mean"), py::arg("s2"))
      .def_readonly("n", &nuisance::NormalSummary::n)
      .def_readonly("mean", &nuisance::NormalSummary::mean)
      .def_readonly("s2", &nuisance::NormalSummary::s2);
  py::class_<nuisance::GammaPairModel>(m, "GammaPairModel")
      .def(py::init([](double p, double q) { return nuisance::GammaPairModel{p, q}; }),
           py::arg("p"), py::arg("q"))
      .def_static("from_dof", &nuisance::GammaPairModel::from_dof, py::arg("k"),
                  py::arg("l"))
      .def_readonly("p", &nuisance::GammaPairModel::p)
      .def_readonly("q", &nuisance::GammaPairModel::q);

  py::enum_<nuisance::GammaConvention>(m, "GammaConvention")
      .value("half_sum", nuisance::GammaConvention::half_sum)
      .value("gamma_rate", nuisance::GammaConvention::gamma_rate);

  py::class_<nuisance::MixingDistribution>(m, "MixingDistribution")
      .def_property_readonly("shape", &nuisance::MixingDistribution::shape)
      .def_property_readonly("scale", &nuisance::MixingDistribution::scale)
      .def("density", &nuisance::MixingDistribution::density, py::arg("v"))
      .def("cdf", &nuisance::MixingDistribution::cdf, py::arg("v"))
      .def("mode", &nuisance::MixingDistribution::mode);
  m.def("inverse_gamma_mixing", &nuisance::inverse_gamma_mixing, py::arg("shape"),
        py::arg("u"), py::arg("convention"));

  m.def("student_vote", &nuisance::student_vote, py::arg("summary"),
        py::arg("theta"));
  m.def("student_vote_quadrature", &nuisance::student_vote_quadrature,
        py::arg("summary"), py::arg("theta"),
        py::arg("tol") = specfun::Tolerance{1e-8});
  m.def("anova_point_mass", &nuisance::anova_point_mass, py::arg("model"),
        py::arg("sample"));
  m.def("anova_vote_series", &nuisance::anova_vote_series, py::arg("model"),
        py::arg("sample"), py::arg("theta"),
        py::arg("tol") = specfun::Tolerance{1e-10, 1e-12});

  py::class_<nuisance::AnovaInductiveDistribution>(m, "AnovaInductiveDistribution")
      .def_property_readonly("atom_mass",
                             &nuisance::AnovaInductiveDistribution::atom_mass)
      .def("cdf_at", &nuisance::AnovaInductiveDistribution::cdf_at, py::arg("theta"))
      .def("prob", &nuisance::AnovaInductiveDistribution::prob, py::arg("a"),
           py::arg("b"));
  m.def("anova_inductive_distribution", &nuisance::anova_inductive_distribution,
        py::arg("model"), py::arg("sample"),
        py::arg("tol") = specfun::Tolerance{1e-10, 1e-12});

  py::class_<oracle::IntervalSet>(m, "IntervalSet")
      .def(py::init<std::vector<std::pair<double, double>>>(), py::arg("parts"))
      .def_property_readonly("parts", &oracle::IntervalSet::parts)
      .def("__repr__", &oracle::IntervalSet::to_string);
  py::class_<oracle::DecisionRule>(m, "DecisionRule")
      .def_static("make", &oracle::DecisionRule::make, py::arg("support"),
                  py::arg("set"))
      .def_static("threshold", &oracle::DecisionRule::threshold, py::arg("support"),
                  py::arg("t"))
      .def_readonly("support", &oracle::DecisionRule::support)
      .def_readonly("accept_one", &oracle::DecisionRule::accept_one);
  m.def("parse_decision_rule", &oracle::parse_decision_rule, py::arg("text"),
        py::arg("support"));
  m.def("threshold_gap", &oracle::threshold_gap, py::arg("rule"));
  m.def("interval_probability", &oracle::interval_probability, py::arg("family"),
        py::arg("theta"), py::arg("set"));

  py::class_<oracle::EventWitness>(m, "EventWitness")
      .def_readonly("event", &oracle::EventWitness::event)
      .def_readonly("theta0", &oracle::EventWitness::theta0)
      .def_readonly("theta1", &oracle::EventWitness::theta1)
      .def_readonly("lhs", &oracle::EventWitness::lhs)
      .def_readonly("rhs", &oracle::EventWitness::rhs)
      .def_readonly("t_split", &oracle::EventWitness::t_split);
  py::class_<oracle::ExpertCheckResult>(m, "ExpertCheckResult")
      .def_readonly("pass_", &oracle::ExpertCheckResult::pass)
      .def_readonly("witness", &oracle::ExpertCheckResult::witness)
      .def_readonly("candidates_tested",
                    &oracle::ExpertCheckResult::candidates_tested)
      .def("__bool__", [](const oracle::ExpertCheckResult& r) { return r.pass; });
  m.def(
      "expert_check",
      [](const models::MlrFamily& family, const oracle::DecisionRule& rule,
         double boundary, const std::vector<std::pair<double, double>>& pairs,
         int budget) {
        return oracle::expert_check(family, rule, boundary, pairs, budget);
      },
      py::arg("family"), py::arg("rule"), py::arg("boundary"),
      py::arg("theta_pairs"), py::arg("search_budget") = 4096);

  py::class_<oracle::UniformityReport>(m, "UniformityReport")
      .def_readonly("ks_statistic", &oracle::UniformityReport::ks_statistic)
      .def_readonly("critical_value", &oracle::UniformityReport::critical_value)
      .def_readonly("n_samples", &oracle::UniformityReport::n_samples)
      .def_readonly("pass_", &oracle::UniformityReport::pass)
      .def("__bool__", [](const oracle::UniformityReport& r) { return r.pass; });
  m.def("uniformity_check", &oracle::uniformity_check, py::arg("family"),
        py::arg("theta1"), py::arg("n_samples"), py::arg("seed"),
        py::arg("sample_theta") = py::none());
}
