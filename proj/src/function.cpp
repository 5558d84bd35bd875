#include "fdt/function.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fdt {

PartialFunction::PartialFunction(int n, int alphabet_size, std::vector<std::string> domain,
                                 std::vector<int> values)
    : n_(n), alphabet_(alphabet_size), domain_(std::move(domain)), values_(std::move(values)) {
  if (n_ <= 0) throw std::invalid_argument("PartialFunction: n must be positive");
  if (alphabet_ < 2) throw std::invalid_argument("PartialFunction: alphabet size must be >= 2");
  if (domain_.empty()) throw std::invalid_argument("PartialFunction: empty domain");
  if (domain_.size() != values_.size())
    throw std::invalid_argument("PartialFunction: domain/values length mismatch");

  // Sort the (input, value) pairs together so callers may pass any order.
  std::vector<std::size_t> order(domain_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return domain_[a] < domain_[b]; });
  std::vector<std::string> sorted_domain(domain_.size());
  std::vector<int> sorted_values(values_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted_domain[i] = domain_[order[i]];
    sorted_values[i] = values_[order[i]];
  }
  domain_ = std::move(sorted_domain);
  values_ = std::move(sorted_values);

  for (std::size_t i = 0; i < domain_.size(); ++i) {
    const std::string& s = domain_[i];
    if (static_cast<int>(s.size()) != n_)
      throw std::invalid_argument("PartialFunction: input '" + s + "' has wrong length");
    for (char c : s) {
      int sym = c - '0';
      if (sym < 0 || sym >= alphabet_)
        throw std::invalid_argument("PartialFunction: symbol out of range in '" + s + "'");
    }
    if (i > 0 && domain_[i - 1] == s)
      throw std::invalid_argument("PartialFunction: duplicate domain string '" + s + "'");
    if (values_[i] != 0 && values_[i] != 1)
      throw std::invalid_argument("PartialFunction: values must be 0 or 1");
  }
}

bool PartialFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](int v) { return v == values_.front(); });
}

std::vector<std::size_t> PartialFunction::preimage(int value) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] == value) out.push_back(i);
  return out;
}

PartialFunction parse_function(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("parse_function: expected a JSON object");
  for (const char* key : {"n", "alphabet", "domain", "values"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("parse_function: missing field '") + key + "'");
  int n = doc["n"].get<int>();
  int alphabet = doc["alphabet"].get<int>();
  auto domain = doc["domain"].get<std::vector<std::string>>();
  std::vector<int> values;
  for (const auto& v : doc["values"]) {
    if (!v.is_number_integer())
      throw std::invalid_argument("parse_function: values must be integers");
    values.push_back(v.get<int>());
  }
  return PartialFunction(n, alphabet, std::move(domain), std::move(values));
}

PartialFunction parse_function_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  return parse_function(doc);
}

nlohmann::json function_to_json(const PartialFunction& f) {
  nlohmann::json j;
  j["n"] = f.bits();
  j["alphabet"] = f.alphabet_size();
  j["domain"] = f.domain();
  j["values"] = f.values();
  return j;
}

namespace {

std::vector<std::string> full_binary_domain(int n) {
  std::vector<std::string> domain;
  domain.reserve(static_cast<std::size_t>(1) << n);
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if (mask & (1ULL << (n - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
    domain.push_back(std::move(s));
  }
  return domain;
}

PartialFunction make_total(int n, int (*rule)(const std::string&)) {
  auto domain = full_binary_domain(n);
  std::vector<int> values;
  values.reserve(domain.size());
  for (const auto& s : domain) values.push_back(rule(s));
  return PartialFunction(n, 2, std::move(domain), std::move(values));
}

}  // namespace

PartialFunction make_xor(int n) {
  return make_total(n, +[](const std::string& s) {
    int acc = 0;
    for (char c : s) acc ^= (c - '0');
    return acc;
  });
}

PartialFunction make_and(int n) {
  return make_total(n, +[](const std::string& s) {
    return static_cast<int>(s.find('0') == std::string::npos);
  });
}

PartialFunction make_or(int n) {
  return make_total(n, +[](const std::string& s) {
    return static_cast<int>(s.find('1') != std::string::npos);
  });
}

PartialFunction make_majority(int n) {
  if (n % 2 == 0) throw std::invalid_argument("make_majority: n must be odd");
  return make_total(n, +[](const std::string& s) {
    int ones = static_cast<int>(std::count(s.begin(), s.end(), '1'));
    return static_cast<int>(2 * ones > static_cast<int>(s.size()));
  });
}

PartialFunction make_trivial(int n) {
  std::vector<std::string> domain = {std::string(static_cast<std::size_t>(n), '0'),
                                     std::string(static_cast<std::size_t>(n), '1')};
  return PartialFunction(n, 2, std::move(domain), {0, 1});
}

PartialFunction make_constant(int n, int value) {
  auto domain = full_binary_domain(n);
  std::vector<int> values(domain.size(), value);
  return PartialFunction(n, 2, std::move(domain), std::move(values));
}

}  // namespace fdt
