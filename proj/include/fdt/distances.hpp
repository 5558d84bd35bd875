#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fdt/scoring.hpp"

namespace fdt {

// A pair of distributions over a common finite support plus a prior weight
// w on the second one. The weighted distance measures and the optimal
// forecasting problem both live on this object.
struct FinitePair {
  std::vector<std::string> support;
  std::vector<double> nu0;
  std::vector<double> nu1;
  double w = 0.5;

  std::size_t size() const { return support.size(); }
  void validate() const;  // throws when masses are off by more than 1e-12
};

enum class DistanceMeasure { tv, h2, chi2s, js };

DistanceMeasure distance_measure_from_name(const std::string& name);
std::string distance_measure_name(DistanceMeasure measure);

// The measure matched to a scoring rule by the max-score equivalence:
// bias<->tv, hs<->h2, brier<->chi2s, ls<->js.
DistanceMeasure matching_measure(ScoringRule rule);

// Weighted distance. With w = 1/2 these agree with the unweighted total
// variation / squared Hellinger / symmetrized chi^2 / Jensen-Shannon.
// Support points with zero mixture mass contribute 0.
double distance(const FinitePair& pair, DistanceMeasure measure);

// The score-maximizing prediction per support point: the posterior
// w*nu1[x]/nu[x] for the proper rules; 0/1 (1/2 on ties) for bias.
// Points with nu[x] = 0 get the neutral prediction 1/2.
std::vector<double> optimal_forecast(const FinitePair& pair, ScoringRule rule);

// Expected score of optimal_forecast when the outcome follows the
// posterior. Equals distance(pair, matching_measure(rule)).
double max_score(const FinitePair& pair, ScoringRule rule);

// Squared Hellinger distance of a disjoint mixture: sum of
// weight_i * h2(pair_i). Throws if supports overlap or some w != 1/2.
double h2_disjoint_mixture(const std::vector<std::pair<double, FinitePair>>& mixtures);

FinitePair pair_from_json(const nlohmann::json& doc);
nlohmann::json pair_to_json(const FinitePair& pair);

}  // namespace fdt
