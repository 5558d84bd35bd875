#include "fdt/scoring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fdt {

ScoringRule scoring_rule_from_name(const std::string& name) {
  if (name == "hs") return ScoringRule::hs;
  if (name == "brier") return ScoringRule::brier;
  if (name == "bias") return ScoringRule::bias;
  if (name == "ls") return ScoringRule::ls;
  throw std::invalid_argument("unknown scoring rule '" + name + "'");
}

std::string scoring_rule_name(ScoringRule rule) {
  switch (rule) {
    case ScoringRule::hs: return "hs";
    case ScoringRule::brier: return "brier";
    case ScoringRule::bias: return "bias";
    case ScoringRule::ls: return "ls";
  }
  throw std::logic_error("scoring_rule_name: bad enum");
}

ExtendedReal eval_rule(ScoringRule rule, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("eval_rule: q outside [0,1]");
  switch (rule) {
    case ScoringRule::hs:
      if (q == 0.0) return ExtendedReal::neg_infinity();
      return 1.0 - std::sqrt((1.0 - q) / q);
    case ScoringRule::brier:
      return 1.0 - 4.0 * (1.0 - q) * (1.0 - q);
    case ScoringRule::bias:
      return 2.0 * q - 1.0;
    case ScoringRule::ls:
      if (q == 0.0) return ExtendedReal::neg_infinity();
      return 1.0 + std::log2(q);
  }
  throw std::logic_error("eval_rule: bad enum");
}

ExtendedReal eval_outcome(ScoringRule rule, double q, int outcome) {
  if (outcome != 0 && outcome != 1) throw std::domain_error("eval_outcome: outcome must be 0/1");
  return outcome == 1 ? eval_rule(rule, q) : eval_rule(rule, 1.0 - q);
}

bool check_proper(ScoringRule rule, double p, int grid_steps) {
  if (grid_steps < 100) throw std::invalid_argument("check_proper: grid_steps must be >= 100");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("check_proper: p outside (0,1)");

  const double step = 1.0 / grid_steps;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> argmax;
  for (int i = 0; i <= grid_steps; ++i) {
    double q = static_cast<double>(i) * step;
    double v = expectation_term(p, eval_rule(rule, q).value) +
               expectation_term(1.0 - p, eval_rule(rule, 1.0 - q).value);
    if (v > best + 1e-15) {
      best = v;
      argmax.assign(1, i);
    } else if (v >= best - 1e-15) {
      argmax.push_back(i);
    }
  }

  if (rule == ScoringRule::bias) {
    // bias(q) = 2q - 1 makes the objective linear in q: the maximizer set is
    // an endpoint, or everything when p = 1/2.
    bool all = argmax.size() == static_cast<std::size_t>(grid_steps + 1);
    bool zero = argmax.size() == 1 && argmax.front() == 0;
    bool one = argmax.size() == 1 && argmax.front() == grid_steps;
    return all || zero || one;
  }

  for (int i : argmax)
    if (std::abs(static_cast<double>(i) * step - p) > step) return false;
  return !argmax.empty();
}

}  // namespace fdt
