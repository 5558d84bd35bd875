#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdt/function.hpp"
#include "fdt/tree.hpp"

namespace fdt {

// Combines k independent predictions into one, the way that makes hs score
// amplify linearly: 1/2 on a 0/1 clash, otherwise
// (1 + prod (1-q_i)/q_i)^{-1} with a lone 0 giving 0 and a lone 1 giving 1.
Rational combine(const std::vector<Rational>& predictions);

// k-fold repetition of a randomized forecasting tree, evaluated
// analytically: the tree is run k times independently on the same input and
// the predictions are combined. Never materialized as a product tree.
struct KFoldTree {
  RandomizedTree base;
  int repetitions = 1;
};

KFoldTree amplified_tree(const RandomizedTree& R, int k);

// Exact expectation over the k-fold product of branch distributions.
double kfold_score(const KFoldTree& T, const std::string& x, int f_of_x);
Rational kfold_bias(const KFoldTree& T, const std::string& x, int f_of_x);
Rational kfold_cost(const KFoldTree& T, const std::string& x);

// The closed form 1 - (1-s)^k the k-fold score is expected to match.
double amplified_score_formula(double score, int k);

// Relabels Boolean leaves b -> (1 -+ gamma)/2; the forecasting version of a
// bias-gamma algorithm. Cost is untouched.
RandomizedTree bias_to_forecast(const RandomizedTree& R, const Rational& gamma);

// The reverse reading: leaf labels are sampled as Bernoulli(q) outputs.
// Structurally the identity; bias() already implements the semantics.
RandomizedTree forecast_to_bias(const RandomizedTree& R);

struct AmpBounds {
  double lower;  // (1/2) min(kx, 1)
  double value;  // 1 - (1-x)^k
  double upper;  // min(kx, 1)
};
AmpBounds amp_bounds(double x, double k);

// ceil(2/gamma^2) repetitions of the bias->forecast->amplify->bias chain;
// worst-case bias of the result is at least 1/2 whenever R has worst-case
// bias >= gamma > 0.
struct MajorityAmplified {
  KFoldTree tree;
  int repetitions = 0;
};
MajorityAmplified majority_amplify(const RandomizedTree& R, const Rational& gamma);

// max over the domain of cost(R,x) / score_hs(R,x)^+, the ratio bound Y the
// odometer construction needs.
double worst_ratio(const RandomizedTree& R, const PartialFunction& f);

// Monte-Carlo simulation of the odometer amplifier: truncate runs at 2Y
// queries, run to 10Y total queries to learn the repetition count L, rerun
// L times and combine, cut everything off at 240Y queries, then read the
// final prediction out as a Bernoulli sample.
struct OdometerConstants {
  static constexpr double kTruncationFactor = 2.0;    // per-run cutoff 2Y
  static constexpr double kPhase1Factor = 10.0;       // cost-estimation budget 10Y
  static constexpr double kFinalCutoffFactor = 240.0; // worst-case query cap 240Y
  static constexpr double kScoreFloor = 7.0 / 16.0;   // score before the final cutoff
};

struct OdometerInputReport {
  std::string input;
  int f_value = 0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
  std::uint64_t max_queries = 0;
  double mean_queries = 0.0;
};

struct OdometerReport {
  double Y = 0.0;
  std::uint64_t query_cap = 0;  // floor(240 Y)
  double worst_input_error_estimate = 0.0;
  std::uint64_t worst_input_query_estimate = 0;
  std::vector<OdometerInputReport> per_input;
};

OdometerReport odometer_amplifier(const RandomizedTree& R, const PartialFunction& f, double Y,
                                  std::uint64_t trials, std::uint64_t seed, int threads = 0);

}  // namespace fdt
