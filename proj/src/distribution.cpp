#include "fdt/distribution.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fdt {

InputDistribution::InputDistribution(const PartialFunction& function,
                                     std::vector<Rational> weights)
    : function_(&function), weights_(std::move(weights)) {
  if (weights_.size() != function.domain_size())
    throw std::invalid_argument("InputDistribution: weight count != domain size");
  Rational total(0);
  for (const Rational& w : weights_) {
    if (w < 0) throw std::invalid_argument("InputDistribution: negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("InputDistribution: weights must sum to 1");
}

Rational InputDistribution::class_mass(int value) const {
  Rational mass(0);
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (function_->value_at(i) == value) mass += weights_[i];
  return mass;
}

InputDistribution InputDistribution::uniform(const PartialFunction& function) {
  std::size_t m = function.domain_size();
  std::vector<Rational> weights(m, Rational(1, static_cast<unsigned long>(m)));
  return InputDistribution(function, std::move(weights));
}

InputDistribution InputDistribution::point_mass(const PartialFunction& function,
                                                std::size_t index) {
  if (index >= function.domain_size())
    throw std::invalid_argument("point_mass: index out of range");
  std::vector<Rational> weights(function.domain_size(), Rational(0));
  weights[index] = 1;
  return InputDistribution(function, std::move(weights));
}

InputDistribution InputDistribution::normalized(const PartialFunction& function,
                                                std::vector<Rational> weights) {
  Rational total(0);
  for (const Rational& w : weights) total += w;
  if (total <= 0) throw std::invalid_argument("normalized: total mass must be positive");
  for (Rational& w : weights) w /= total;
  return InputDistribution(function, std::move(weights));
}

BalanceReport is_balanced(const InputDistribution& mu) {
  Rational imbalance = mu.class_mass(1) - Rational(1, 2);
  return BalanceReport{imbalance, imbalance == 0};
}

InputDistribution distribution_from_json(const PartialFunction& function,
                                         const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("weights"))
    throw std::invalid_argument("distribution_from_json: expected {\"weights\": [...]}");
  std::vector<Rational> weights;
  for (const auto& w : doc["weights"]) weights.push_back(rational_from_json(w));
  return InputDistribution(function, std::move(weights));
}

nlohmann::json distribution_to_json(const InputDistribution& mu) {
  nlohmann::json weights = nlohmann::json::array();
  for (const Rational& w : mu.weights()) weights.push_back(rational_to_json(w));
  nlohmann::json j;
  j["weights"] = std::move(weights);
  return j;
}

}  // namespace fdt
