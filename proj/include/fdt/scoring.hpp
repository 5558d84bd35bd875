#pragma once

#include <string>

#include "fdt/extended.hpp"

namespace fdt {

// The four scoring rules. Every rule satisfies s(1) = 1, s(1/2) = 0 and is
// nondecreasing on [0,1]; hs and ls diverge to -inf at 0.
enum class ScoringRule { hs, brier, bias, ls };

ScoringRule scoring_rule_from_name(const std::string& name);
std::string scoring_rule_name(ScoringRule rule);

// s(q). Throws std::domain_error for q outside [0,1].
ExtendedReal eval_rule(ScoringRule rule, double q);

// s_outcome(q): s(q) when the true outcome is 1, s(1-q) when it is 0.
ExtendedReal eval_outcome(ScoringRule rule, double q, int outcome);

// Grid search for the maximizer of p*s(q) + (1-p)*s(1-q) over q. For the
// proper rules the argmax must land within one grid step of q = p; for the
// bias rule the maximizer set must be {0}, {1} or all of [0,1]. Doubles as
// the independent oracle for the properness lemma.
bool check_proper(ScoringRule rule, double p, int grid_steps);

}  // namespace fdt
