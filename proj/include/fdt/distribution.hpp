#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fdt/function.hpp"
#include "fdt/rational.hpp"

namespace fdt {

// Exact probability vector over the (sorted) domain of a PartialFunction.
// Weights are rationals and sum to exactly 1; nothing here ever rounds.
class InputDistribution {
 public:
  InputDistribution(const PartialFunction& function, std::vector<Rational> weights);

  const PartialFunction& function() const { return *function_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t index) const { return weights_[index]; }
  std::size_t size() const { return weights_.size(); }

  // Total mass on f^{-1}(value).
  Rational class_mass(int value) const;

  static InputDistribution uniform(const PartialFunction& function);
  static InputDistribution point_mass(const PartialFunction& function, std::size_t index);

  // Rescales to total mass one (errors on zero total mass).
  static InputDistribution normalized(const PartialFunction& function,
                                      std::vector<Rational> weights);

 private:
  const PartialFunction* function_;
  std::vector<Rational> weights_;
};

struct BalanceReport {
  Rational imbalance;  // mu(f^{-1}(1)) - 1/2
  bool balanced;       // imbalance == 0
};

BalanceReport is_balanced(const InputDistribution& mu);

// Distribution JSON: {"weights": [{"num": int, "den": int}, ...]} aligned
// with the sorted domain of the function it accompanies.
InputDistribution distribution_from_json(const PartialFunction& function,
                                         const nlohmann::json& doc);
nlohmann::json distribution_to_json(const InputDistribution& mu);

}  // namespace fdt
