#pragma once

#include <vector>

#include "fdt/distribution.hpp"
#include "fdt/function.hpp"
#include "fdt/lp.hpp"
#include "fdt/tree.hpp"

namespace fdt {

// Brute-force query-complexity oracles over the exhaustive Boolean-tree
// enumeration (n <= 3, binary). All values and witnesses are exact.

// Mixture of Boolean trees; re-evaluating it reproduces the claimed
// error/bias/cost with zero rational residue.
struct WitnessMixture {
  struct Component {
    Rational probability;
    Tree tree;
  };
  std::vector<Component> components;

  RandomizedTree as_randomized() const;
};

// Minimum depth of a Boolean tree computing f exactly on Dom(f).
int det_complexity(const PartialFunction& f);

struct RandomizedWorstReport {
  int depth = 0;  // smallest worst-case depth T achieving error <= eps
  Rational eps;
  WitnessMixture witness;
};

// Smallest T such that some mixture of depth-<=T Boolean trees errs with
// probability at most eps on every domain input.
RandomizedWorstReport randomized_worst(const PartialFunction& f, const Rational& eps);

struct DistributionalReport {
  bool achievable = true;  // false encodes +inf (gamma above best bias)
  Rational expected_cost;
  Rational gamma;
  WitnessMixture witness;
};

// Minimum expected cost (against mu) over mixtures of Boolean trees with
// expected bias (against mu) at least gamma, via the lower convex envelope
// of the per-tree (bias, cost) cloud.
DistributionalReport distributional(const PartialFunction& f, const InputDistribution& mu,
                                    const Rational& gamma);

struct AvgWorstRow {
  Rational gamma;
  bool achievable = true;
  Rational avg_cost;    // meaningful when achievable
  Rational threshold;   // gamma^2 R(f) / 500
  bool pass = true;
};

struct AvgWorstReport {
  int r_f = 0;  // randomized_worst(f, 1/3).depth
  std::vector<AvgWorstRow> rows;
  bool all_pass = true;
};

// The distributional-vs-worst-case table: R-bar^mu_gamma(f) against
// gamma^2 R(f) / 500 for each gamma.
AvgWorstReport verify_avg_worst(const PartialFunction& f, const InputDistribution& mu,
                                const std::vector<Rational>& gammas);

// Exact per-tree statistics shared by the oracles.
Rational tree_error_probability(const Tree& tree, const PartialFunction& f, std::size_t input);
Rational tree_bias(const Tree& tree, const PartialFunction& f, const InputDistribution& mu);
Rational tree_cost(const Tree& tree, const PartialFunction& f, const InputDistribution& mu);

}  // namespace fdt
