#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expertvote/models.hpp"

namespace expertvote::oracle {

// Finite union of disjoint intervals of the line, kept sorted and merged.
// Endpoint inclusion is immaterial under a continuous law, so parts are
// plain (lo, hi) pairs with lo < hi.
class IntervalSet {
 public:
  using Part = std::pair<double, double>;

  IntervalSet() = default;
  explicit IntervalSet(std::vector<Part> parts);

  const std::vector<Part>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  IntervalSet intersect(double lo, double hi) const;
  IntervalSet complement_within(double lo, double hi) const;
  IntervalSet unite(const IntervalSet& other) const;
  std::string to_string() const;

 private:
  std::vector<Part> parts_;
};

// P_theta of an interval union, by exact CDF differences (the CDF extends
// with 0 / 1 beyond the support).
double interval_probability(const models::MlrFamily& family, double theta,
                            const IntervalSet& set);

// A {0,1}-valued decision rule represented by the set {phi = 1} inside the
// sample interval.
struct DecisionRule {
  models::ParamInterval support;
  IntervalSet accept_one;

  static DecisionRule make(const models::ParamInterval& support, IntervalSet set);
  // The threshold rule f_t = 1 on (-inf, t).
  static DecisionRule threshold(const models::ParamInterval& support, double t);
};

// Grammar: interval ('u' interval)*, interval = '(' | '[' bound ',' bound
// ')' | ']', bound = real | [+-]inf.  Throws std::invalid_argument.
DecisionRule parse_decision_rule(const std::string& text,
                                 const models::ParamInterval& support);

// (t_lower, t_upper) with t_lower = sup{t : f_t <= phi a.s.} and
// t_upper = inf{t : f_t >= phi a.s.}; equal iff the rule is a.s. a
// threshold rule.  The empty rule maps to (inf I, inf I).
std::pair<double, double> threshold_gap(const DecisionRule& rule);

// An event refuting the expert property: the conditional weight of
// {phi = 1} given C is smaller under theta1 (in Theta_1) than under theta0.
struct EventWitness {
  IntervalSet event;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double lhs = 0.0;  // ratio under theta1
  double rhs = 0.0;  // ratio under theta0
  double t_split = 0.0;
};

struct ExpertCheckResult {
  bool pass = true;
  std::optional<EventWitness> witness;
  long candidates_tested = 0;
  explicit operator bool() const { return pass; }
};

// Searches candidate events C = ([t', t) cap {phi=0}) union ((t, t''] cap
// {phi=1}) over grids of t refining the threshold gap, doubling from 64
// points up to the budget.  Deterministic given grids and budget.
ExpertCheckResult expert_check(const models::MlrFamily& family,
                               const DecisionRule& rule, double boundary,
                               std::span<const std::pair<double, double>> theta_pairs,
                               int search_budget = 4096);

// SplitMix64 (constants from Steele, Lea & Flood 2014); next_unit maps the
// top 53 bits into (0,1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_unit();

 private:
  std::uint64_t state_;
};

struct UniformityReport {
  double ks_statistic = 0.0;
  double critical_value = 0.0;
  int n_samples = 0;
  bool pass = false;
  explicit operator bool() const { return pass; }
};

// Samples X ~ P_theta1 through the quantile transform with a seeded
// SplitMix64 stream and tests {F(theta1, X_i)} against uniformity with the
// asymptotic 1% Kolmogorov-Smirnov critical value 1.6276/sqrt(n).
// sample_theta (when given) draws X from a different parameter, which is
// how tests exercise the miscalibration path.
UniformityReport uniformity_check(const models::MlrFamily& family, double theta1,
                                  int n_samples, std::uint64_t seed,
                                  std::optional<double> sample_theta = std::nullopt);

}  // namespace expertvote::oracle
