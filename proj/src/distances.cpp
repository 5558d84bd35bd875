#include "fdt/distances.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fdt {

void FinitePair::validate() const {
  if (nu0.size() != support.size() || nu1.size() != support.size())
    throw std::invalid_argument("FinitePair: vector sizes disagree with support");
  if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("FinitePair: w outside [0,1]");
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (nu0[i] < 0.0 || nu1[i] < 0.0)
      throw std::invalid_argument("FinitePair: negative probability entry");
    s0 += nu0[i];
    s1 += nu1[i];
  }
  if (std::abs(s0 - 1.0) > 1e-12 || std::abs(s1 - 1.0) > 1e-12)
    throw std::invalid_argument("FinitePair: distributions must sum to 1");
}

DistanceMeasure distance_measure_from_name(const std::string& name) {
  if (name == "tv") return DistanceMeasure::tv;
  if (name == "h2") return DistanceMeasure::h2;
  if (name == "chi2s") return DistanceMeasure::chi2s;
  if (name == "js") return DistanceMeasure::js;
  throw std::invalid_argument("unknown distance measure '" + name + "'");
}

std::string distance_measure_name(DistanceMeasure measure) {
  switch (measure) {
    case DistanceMeasure::tv: return "tv";
    case DistanceMeasure::h2: return "h2";
    case DistanceMeasure::chi2s: return "chi2s";
    case DistanceMeasure::js: return "js";
  }
  throw std::logic_error("distance_measure_name: bad enum");
}

DistanceMeasure matching_measure(ScoringRule rule) {
  switch (rule) {
    case ScoringRule::bias: return DistanceMeasure::tv;
    case ScoringRule::hs: return DistanceMeasure::h2;
    case ScoringRule::brier: return DistanceMeasure::chi2s;
    case ScoringRule::ls: return DistanceMeasure::js;
  }
  throw std::logic_error("matching_measure: bad enum");
}

namespace {

double binary_entropy(double alpha) {
  double acc = 0.0;
  if (alpha > 0.0) acc -= alpha * std::log2(alpha);
  if (alpha < 1.0) acc -= (1.0 - alpha) * std::log2(1.0 - alpha);
  return acc;
}

}  // namespace

double distance(const FinitePair& pair, DistanceMeasure measure) {
  pair.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    double mass0 = (1.0 - pair.w) * pair.nu0[i];
    double mass1 = pair.w * pair.nu1[i];
    double nu = mass0 + mass1;
    if (nu == 0.0) continue;
    double r = std::abs(mass0 - mass1) / nu;
    double term = 0.0;
    switch (measure) {
      case DistanceMeasure::tv: term = r; break;
      case DistanceMeasure::h2: term = 1.0 - std::sqrt(std::max(0.0, 1.0 - r * r)); break;
      case DistanceMeasure::chi2s: term = r * r; break;
      case DistanceMeasure::js: term = 1.0 - binary_entropy((1.0 + r) / 2.0); break;
    }
    acc += nu * term;
  }
  return acc;
}

std::vector<double> optimal_forecast(const FinitePair& pair, ScoringRule rule) {
  pair.validate();
  std::vector<double> phi(pair.size(), 0.5);
  for (std::size_t i = 0; i < pair.size(); ++i) {
    double mass0 = (1.0 - pair.w) * pair.nu0[i];
    double mass1 = pair.w * pair.nu1[i];
    double nu = mass0 + mass1;
    if (nu == 0.0) continue;
    if (rule == ScoringRule::bias) {
      if (mass1 > mass0) phi[i] = 1.0;
      else if (mass1 < mass0) phi[i] = 0.0;
      else phi[i] = 0.5;
    } else {
      phi[i] = mass1 / nu;
    }
  }
  return phi;
}

double max_score(const FinitePair& pair, ScoringRule rule) {
  std::vector<double> phi = optimal_forecast(pair, rule);
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    double mass0 = (1.0 - pair.w) * pair.nu0[i];
    double mass1 = pair.w * pair.nu1[i];
    if (mass0 > 0.0) acc += mass0 * eval_outcome(rule, phi[i], 0).value;
    if (mass1 > 0.0) acc += mass1 * eval_outcome(rule, phi[i], 1).value;
  }
  return acc;
}

double h2_disjoint_mixture(const std::vector<std::pair<double, FinitePair>>& mixtures) {
  std::set<std::string> seen;
  double total_weight = 0.0;
  double acc = 0.0;
  for (const auto& [weight, pair] : mixtures) {
    if (weight < 0.0) throw std::invalid_argument("h2_disjoint_mixture: negative weight");
    if (pair.w != 0.5) throw std::invalid_argument("h2_disjoint_mixture: pairs must have w = 1/2");
    pair.validate();
    for (const std::string& point : pair.support)
      if (!seen.insert(point).second)
        throw std::invalid_argument("h2_disjoint_mixture: overlapping supports at '" + point + "'");
    total_weight += weight;
    acc += weight * distance(pair, DistanceMeasure::h2);
  }
  if (std::abs(total_weight - 1.0) > 1e-12)
    throw std::invalid_argument("h2_disjoint_mixture: weights must sum to 1");
  return acc;
}

FinitePair pair_from_json(const nlohmann::json& doc) {
  FinitePair pair;
  if (!doc.is_object()) throw std::invalid_argument("pair_from_json: expected object");
  pair.support = doc.at("support").get<std::vector<std::string>>();
  pair.nu0 = doc.at("nu0").get<std::vector<double>>();
  pair.nu1 = doc.at("nu1").get<std::vector<double>>();
  pair.w = doc.value("w", 0.5);
  pair.validate();
  return pair;
}

nlohmann::json pair_to_json(const FinitePair& pair) {
  nlohmann::json j;
  j["support"] = pair.support;
  j["nu0"] = pair.nu0;
  j["nu1"] = pair.nu1;
  j["w"] = pair.w;
  return j;
}

}  // namespace fdt
