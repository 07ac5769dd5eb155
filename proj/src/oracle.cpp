#include "expertvote/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace expertvote::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cdf_on_line(const models::MlrFamily& family, double theta, double x) {
  const models::ParamInterval& sup = family.support();
  if (x <= sup.lower) return 0.0;
  if (x >= sup.upper) return 1.0;
  return family.cdf(theta, x);
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Part> parts) {
  for (const Part& p : parts) {
    if (std::isnan(p.first) || std::isnan(p.second))
      throw std::domain_error("IntervalSet: NaN endpoint");
  }
  std::sort(parts.begin(), parts.end());
  for (const Part& p : parts) {
    if (!(p.first < p.second)) continue;  // empty or degenerate part
    if (!parts_.empty() && p.first <= parts_.back().second)
      parts_.back().second = std::max(parts_.back().second, p.second);
    else
      parts_.push_back(p);
  }
}

IntervalSet IntervalSet::intersect(double lo, double hi) const {
  std::vector<Part> out;
  for (const Part& p : parts_) {
    double a = std::max(p.first, lo);
    double b = std::min(p.second, hi);
    if (a < b) out.push_back({a, b});
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement_within(double lo, double hi) const {
  std::vector<Part> out;
  double cursor = lo;
  for (const Part& p : parts_) {
    if (p.second <= lo) continue;
    if (p.first >= hi) break;
    if (p.first > cursor) out.push_back({cursor, std::min(p.first, hi)});
    cursor = std::max(cursor, p.second);
    if (cursor >= hi) break;
  }
  if (cursor < hi) out.push_back({cursor, hi});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Part> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << "u";
    os << "(" << parts_[i].first << "," << parts_[i].second << ")";
  }
  return os.str();
}

double interval_probability(const models::MlrFamily& family, double theta,
                            const IntervalSet& set) {
  double total = 0.0;
  for (const auto& [lo, hi] : set.parts())
    total += cdf_on_line(family, theta, hi) - cdf_on_line(family, theta, lo);
  return total;
}

DecisionRule DecisionRule::make(const models::ParamInterval& support,
                                IntervalSet set) {
  support.validate();
  return {support, set.intersect(support.lower, support.upper)};
}

DecisionRule DecisionRule::threshold(const models::ParamInterval& support,
                                     double t) {
  return make(support, IntervalSet({{-kInf, t}}));
}

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

double parse_bound(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  double sign = 1.0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1.0;
    ++i;
  }
  if (s.compare(i, 3, "inf") == 0) {
    i += 3;
    return sign * kInf;
  }
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s.substr(i), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("decision rule: expected a number at '" +
                                s.substr(i) + "'");
  }
  i += used;
  return sign * v;
}

}  // namespace

DecisionRule parse_decision_rule(const std::string& text,
                                 const models::ParamInterval& support) {
  std::vector<IntervalSet::Part> parts;
  std::size_t i = 0;
  skip_ws(text, i);
  while (true) {
    if (i >= text.size() || (text[i] != '(' && text[i] != '['))
      throw std::invalid_argument("decision rule: expected '(' or '[' in '" + text + "'");
    ++i;
    double lo = parse_bound(text, i);
    skip_ws(text, i);
    if (i >= text.size() || text[i] != ',')
      throw std::invalid_argument("decision rule: expected ',' in '" + text + "'");
    ++i;
    double hi = parse_bound(text, i);
    skip_ws(text, i);
    if (i >= text.size() || (text[i] != ')' && text[i] != ']'))
      throw std::invalid_argument("decision rule: expected ')' or ']' in '" + text + "'");
    ++i;
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw std::invalid_argument("decision rule: malformed interval in '" + text + "'");
    if (lo < hi) parts.push_back({lo, hi});
    skip_ws(text, i);
    if (i >= text.size()) break;
    if (text[i] != 'u' && text[i] != 'U')
      throw std::invalid_argument("decision rule: expected 'u' between intervals in '" +
                                  text + "'");
    ++i;
    skip_ws(text, i);
  }
  return DecisionRule::make(support, IntervalSet(std::move(parts)));
}

std::pair<double, double> threshold_gap(const DecisionRule& rule) {
  double lo_end = rule.support.lower;
  double hi_end = rule.support.upper;
  const auto& parts = rule.accept_one.parts();
  if (parts.empty()) return {lo_end, lo_end};
  double t_lower = parts.front().first <= lo_end ? parts.front().second : lo_end;
  double t_upper = parts.back().second;
  t_lower = std::min(t_lower, hi_end);
  t_upper = std::min(t_upper, hi_end);
  return {t_lower, t_upper};
}

ExpertCheckResult expert_check(const models::MlrFamily& family,
                               const DecisionRule& rule, double boundary,
                               std::span<const std::pair<double, double>> theta_pairs,
                               int search_budget) {
  if (!family.theta_domain().contains(boundary))
    throw std::domain_error("expert_check: boundary outside the parameter interval");
  for (const auto& [lo, hi] : theta_pairs) {
    if (!family.theta_domain().contains(lo) || !family.theta_domain().contains(hi))
      throw std::domain_error("expert_check: theta pair outside the parameter interval");
    if (!(lo <= boundary && boundary < hi))
      throw std::domain_error("expert_check: theta pair must straddle the boundary");
  }
  if (theta_pairs.empty())
    throw std::domain_error("expert_check: needs at least one theta pair");
  if (search_budget < 1)
    throw std::domain_error("expert_check: search budget must be >= 1");

  ExpertCheckResult result;
  auto [t1, t2] = threshold_gap(rule);
  if (!(t2 > t1)) return result;  // a.s. a threshold rule, nothing to refute

  IntervalSet reject = rule.accept_one.complement_within(rule.support.lower,
                                                         rule.support.upper);
  // Probe splits on dyadic grids that refine the gap; the proof construction
  // succeeds for any split strictly inside it, so coarse grids suffice.
  // Infinite gap ends get a finite probe window next to the finite end.
  double glo = t1, ghi = t2;
  if (std::isinf(glo) && std::isinf(ghi)) {
    glo = -32.0;
    ghi = 32.0;
  } else if (std::isinf(glo)) {
    glo = ghi - 64.0;
  } else if (std::isinf(ghi)) {
    ghi = glo + 64.0;
  }
  for (int level = 64; result.candidates_tested < search_budget; level *= 2) {
    int step = level == 64 ? 1 : 2;  // past 64, odd offsets are the new points
    for (int i = 1; i < level; i += step) {
      double t = glo + (ghi - glo) * double(i) / double(level);
      IntervalSet a = reject.intersect(t1, t);
      IntervalSet b = rule.accept_one.intersect(t, t2);
      if (a.empty() || b.empty()) continue;
      for (const auto& [theta_low, theta_high] : theta_pairs) {
        double pa_low = interval_probability(family, theta_low, a);
        double pb_low = interval_probability(family, theta_low, b);
        double pa_high = interval_probability(family, theta_high, a);
        double pb_high = interval_probability(family, theta_high, b);
        if (pa_low + pb_low <= 0.0 || pa_high + pb_high <= 0.0) continue;
        ++result.candidates_tested;
        double lhs = pb_low / (pa_low + pb_low);
        double rhs = pb_high / (pa_high + pb_high);
        if (lhs < rhs - 1e-12) {
          result.pass = false;
          result.witness =
              EventWitness{a.unite(b), theta_high, theta_low, lhs, rhs, t};
          return result;
        }
        if (result.candidates_tested >= search_budget) return result;
      }
    }
  }
  return result;
}

std::uint64_t SplitMix64::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  double u = double(next_u64() >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;  // keep the draw inside (0,1)
}

UniformityReport uniformity_check(const models::MlrFamily& family, double theta1,
                                  int n_samples, std::uint64_t seed,
                                  std::optional<double> sample_theta) {
  if (n_samples < 1000)
    throw std::domain_error("uniformity_check: n_samples must be >= 1000");
  double draw_theta = sample_theta.value_or(theta1);
  SplitMix64 rng(seed);
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  for (double& v : values) {
    double x = family.quantile(draw_theta, rng.next_unit());
    v = family.cdf(theta1, x);
  }
  std::sort(values.begin(), values.end());
  double n = double(n_samples);
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double di = double(i);
    d = std::max(d, std::max((di + 1.0) / n - values[i], values[i] - di / n));
  }
  UniformityReport report;
  report.ks_statistic = d;
  report.critical_value = 1.6276 / std::sqrt(n);  // asymptotic 1% point
  report.n_samples = n_samples;
  report.pass = d < report.critical_value;
  return report;
}

}  // namespace expertvote::oracle
