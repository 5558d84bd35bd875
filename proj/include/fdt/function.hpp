#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fdt {

// A Boolean-valued function on an explicit finite subset of Sigma^n.
// Domain strings are kept sorted lexicographically so that every vector
// indexed by the domain (distributions, score vectors, LP columns) has one
// canonical order.
class PartialFunction {
 public:
  PartialFunction(int n, int alphabet_size, std::vector<std::string> domain,
                  std::vector<int> values);

  int bits() const { return n_; }
  int alphabet_size() const { return alphabet_; }
  std::size_t domain_size() const { return domain_.size(); }
  const std::vector<std::string>& domain() const { return domain_; }
  const std::vector<int>& values() const { return values_; }

  int value_at(std::size_t index) const { return values_[index]; }
  const std::string& input_at(std::size_t index) const { return domain_[index]; }

  // Symbol of input `index` at position `position`, as an integer in
  // [0, alphabet_size).
  int symbol(std::size_t index, int position) const {
    return domain_[index][static_cast<std::size_t>(position)] - '0';
  }

  bool is_constant() const;
  std::vector<std::size_t> preimage(int value) const;

  bool operator==(const PartialFunction& other) const = default;

 private:
  int n_;
  int alphabet_;
  std::vector<std::string> domain_;
  std::vector<int> values_;
};

// Truth-table JSON: {"n": int, "alphabet": int, "domain": [string],
// "values": [0|1]}. Throws std::invalid_argument on malformed input.
PartialFunction parse_function(const nlohmann::json& doc);
PartialFunction parse_function_text(const std::string& text);
nlohmann::json function_to_json(const PartialFunction& f);

// The standard small functions used throughout the tests and docs.
PartialFunction make_xor(int n);
PartialFunction make_and(int n);
PartialFunction make_or(int n);
PartialFunction make_majority(int n);   // odd n
PartialFunction make_trivial(int n);    // domain {0^n, 1^n}
PartialFunction make_constant(int n, int value);

}  // namespace fdt
