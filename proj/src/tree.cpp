#include "fdt/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fdt {

Tree Tree::leaf(Rational label) {
  if (label < 0 || label > 1) throw std::invalid_argument("Tree::leaf: label outside [0,1]");
  Tree t;
  Node node;
  node.label = std::move(label);
  t.nodes_.push_back(std::move(node));
  return t;
}

Tree Tree::internal(int query, std::vector<Tree> children) {
  if (query < 0) throw std::invalid_argument("Tree::internal: negative query index");
  if (children.empty()) throw std::invalid_argument("Tree::internal: no children");
  Tree t;
  Node root;
  root.query = query;
  t.nodes_.push_back(std::move(root));
  for (Tree& child : children) {
    int offset = static_cast<int>(t.nodes_.size());
    t.nodes_[0].children.push_back(offset);
    for (Node& node : child.nodes_) {
      for (int& c : node.children) c += offset;
      t.nodes_.push_back(std::move(node));
    }
  }
  return t;
}

namespace {

int height_below(const Tree& tree, int index) {
  const Tree::Node& node = tree.node(index);
  if (node.is_leaf()) return 0;
  int best = 0;
  for (int child : node.children) best = std::max(best, height_below(tree, child));
  return best + 1;
}

}  // namespace

int Tree::height() const { return height_below(*this, 0); }

int Tree::leaf_count() const {
  int count = 0;
  for (const Node& node : nodes_)
    if (node.is_leaf()) ++count;
  return count;
}

bool Tree::is_boolean() const {
  for (const Node& node : nodes_)
    if (node.is_leaf() && node.label != 0 && node.label != 1) return false;
  return true;
}

namespace {

void validate_below(const Tree& tree, int index, int n, int alphabet_size,
                    std::vector<bool>& on_path, int depth) {
  const Tree::Node& node = tree.node(index);
  if (node.is_leaf()) {
    if (node.label < 0 || node.label > 1)
      throw std::invalid_argument("Tree: leaf label outside [0,1]");
    return;
  }
  if (node.query >= n) throw std::invalid_argument("Tree: query index out of range");
  if (on_path[static_cast<std::size_t>(node.query)])
    throw std::invalid_argument("Tree: index queried twice on a path");
  if (static_cast<int>(node.children.size()) != alphabet_size)
    throw std::invalid_argument("Tree: internal node must have alphabet_size children");
  if (depth + 1 > n) throw std::invalid_argument("Tree: depth exceeds n");
  on_path[static_cast<std::size_t>(node.query)] = true;
  for (int child : node.children) validate_below(tree, child, n, alphabet_size, on_path, depth + 1);
  on_path[static_cast<std::size_t>(node.query)] = false;
}

}  // namespace

void Tree::validate(int n, int alphabet_size) const {
  if (nodes_.empty()) throw std::invalid_argument("Tree: empty node list");
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  validate_below(*this, 0, n, alphabet_size, on_path, 0);
}

RunResult run(const Tree& tree, const std::string& x) {
  RunResult result;
  int index = 0;
  while (!tree.node(index).is_leaf()) {
    const Tree::Node& node = tree.node(index);
    if (node.query >= static_cast<int>(x.size()))
      throw std::invalid_argument("run: query index exceeds input length");
    int symbol = x[static_cast<std::size_t>(node.query)] - '0';
    if (symbol < 0 || symbol >= static_cast<int>(node.children.size()))
      throw std::invalid_argument("run: symbol out of range for tree");
    result.path.emplace_back(node.query, symbol);
    ++result.depth;
    index = node.children[static_cast<std::size_t>(symbol)];
  }
  result.prediction = tree.node(index).label;
  result.leaf_index = index;
  return result;
}

RandomizedTree::RandomizedTree(const Tree& tree) {
  support_.push_back(Component{Rational(1), tree});
}

RandomizedTree::RandomizedTree(std::vector<Component> support) : support_(std::move(support)) {
  if (support_.empty()) throw std::invalid_argument("RandomizedTree: empty support");
  Rational total(0);
  for (const Component& c : support_) {
    if (c.probability < 0) throw std::invalid_argument("RandomizedTree: negative probability");
    total += c.probability;
  }
  if (total != 1) throw std::invalid_argument("RandomizedTree: probabilities must sum to 1");
}

RandomizedTree RandomizedTree::mixture(
    const std::vector<std::pair<Rational, RandomizedTree>>& parts) {
  std::vector<Component> support;
  for (const auto& [weight, R] : parts)
    for (const Component& c : R.support())
      if (weight * c.probability != 0)
        support.push_back(Component{weight * c.probability, c.tree});
  return RandomizedTree(std::move(support));
}

std::vector<Branch> branch_distribution(const RandomizedTree& R, const std::string& x) {
  std::vector<Branch> branches;
  branches.reserve(R.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    const auto& component = R.support()[i];
    RunResult r = run(component.tree, x);
    Branch b;
    b.probability = component.probability;
    b.prediction = r.prediction;
    b.depth = r.depth;
    b.tree_index = i;
    b.leaf_index = r.leaf_index;
    branches.push_back(std::move(b));
  }
  return branches;
}

Rational cost(const RandomizedTree& R, const std::string& x) {
  Rational acc(0);
  for (const auto& component : R.support())
    acc += component.probability * run(component.tree, x).depth;
  return acc;
}

Rational cost(const RandomizedTree& R, const InputDistribution& mu) {
  Rational acc(0);
  const PartialFunction& f = mu.function();
  for (std::size_t i = 0; i < f.domain_size(); ++i)
    if (mu.weight(i) != 0) acc += mu.weight(i) * cost(R, f.input_at(i));
  return acc;
}

ExtendedReal score(const RandomizedTree& R, const std::string& x, int f_of_x, ScoringRule rule) {
  double acc = 0.0;
  for (const auto& component : R.support()) {
    if (component.probability == 0) continue;
    RunResult r = run(component.tree, x);
    ExtendedReal s = eval_outcome(rule, to_double(r.prediction), f_of_x);
    if (s.is_neg_inf()) return ExtendedReal::neg_infinity();
    acc += to_double(component.probability) * s.value;
  }
  return acc;
}

ExtendedReal score(const RandomizedTree& R, const InputDistribution& mu, ScoringRule rule) {
  double acc = 0.0;
  const PartialFunction& f = mu.function();
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    if (mu.weight(i) == 0) continue;
    ExtendedReal s = score(R, f.input_at(i), f.value_at(i), rule);
    if (s.is_neg_inf()) return ExtendedReal::neg_infinity();
    acc += to_double(mu.weight(i)) * s.value;
  }
  return acc;
}

Rational bias(const RandomizedTree& R, const std::string& x, int f_of_x) {
  // With leaf label q read as Bernoulli(q), bias contribution is 2q - 1
  // when f(x) = 1 and 1 - 2q when f(x) = 0.
  Rational acc(0);
  for (const auto& component : R.support()) {
    if (component.probability == 0) continue;
    Rational q = run(component.tree, x).prediction;
    Rational term = f_of_x == 1 ? Rational(2 * q - 1) : Rational(1 - 2 * q);
    acc += component.probability * term;
  }
  return acc;
}

Rational bias(const RandomizedTree& R, const InputDistribution& mu) {
  Rational acc(0);
  const PartialFunction& f = mu.function();
  for (std::size_t i = 0; i < f.domain_size(); ++i)
    if (mu.weight(i) != 0) acc += mu.weight(i) * bias(R, f.input_at(i), f.value_at(i));
  return acc;
}

std::vector<TranscriptMass> transcript_distribution(const RandomizedTree& R,
                                                    const InputDistribution& mu) {
  // Key on (tree_index, leaf_index); inputs reaching the same leaf of the
  // same tree are indistinguishable to an observer of the run.
  std::map<std::pair<std::size_t, int>, TranscriptMass> acc;
  const PartialFunction& f = mu.function();
  for (std::size_t i = 0; i < R.size(); ++i) {
    const auto& component = R.support()[i];
    if (component.probability == 0) continue;
    for (std::size_t xi = 0; xi < f.domain_size(); ++xi) {
      if (mu.weight(xi) == 0) continue;
      RunResult r = run(component.tree, f.input_at(xi));
      auto key = std::make_pair(i, r.leaf_index);
      auto it = acc.find(key);
      if (it == acc.end()) {
        TranscriptMass tm;
        tm.transcript.tree_index = i;
        tm.transcript.path = r.path;
        tm.mass = component.probability * mu.weight(xi);
        acc.emplace(key, std::move(tm));
      } else {
        it->second.mass += component.probability * mu.weight(xi);
      }
    }
  }
  std::vector<TranscriptMass> out;
  out.reserve(acc.size());
  for (auto& [key, tm] : acc) out.push_back(std::move(tm));
  return out;
}

namespace {

Integer count_trees_recursive(int available, int alphabet_size, int leaf_choices) {
  Integer acc(leaf_choices);
  if (available == 0) return acc;
  Integer below = count_trees_recursive(available - 1, alphabet_size, leaf_choices);
  Integer product(1);
  for (int i = 0; i < alphabet_size; ++i) product *= below;
  return acc + available * product;
}

// All trees over the index set `available`, leaves drawn from `labels`.
// Order: leaves first, then root query ascending, children in
// lexicographic product order.
std::vector<Tree> enumerate_over(const std::vector<int>& available, int alphabet_size,
                                 const std::vector<Rational>& labels) {
  std::vector<Tree> out;
  for (const Rational& label : labels) out.push_back(Tree::leaf(label));
  for (std::size_t pick = 0; pick < available.size(); ++pick) {
    std::vector<int> rest;
    for (std::size_t j = 0; j < available.size(); ++j)
      if (j != pick) rest.push_back(available[j]);
    std::vector<Tree> sub = enumerate_over(rest, alphabet_size, labels);
    // Odometer over alphabet_size child slots, last slot fastest.
    std::vector<std::size_t> choice(static_cast<std::size_t>(alphabet_size), 0);
    while (true) {
      std::vector<Tree> children;
      children.reserve(choice.size());
      for (std::size_t c : choice) children.push_back(sub[c]);
      out.push_back(Tree::internal(available[pick], std::move(children)));
      int slot = alphabet_size - 1;
      while (slot >= 0) {
        if (++choice[static_cast<std::size_t>(slot)] < sub.size()) break;
        choice[static_cast<std::size_t>(slot)] = 0;
        --slot;
      }
      if (slot < 0) break;
    }
  }
  return out;
}

std::vector<Tree> enumerate_impl(int n, int alphabet_size, const std::vector<Rational>& labels) {
  if (n <= 0) throw std::invalid_argument("enumerate: n must be positive");
  if (alphabet_size < 2) throw std::invalid_argument("enumerate: alphabet size must be >= 2");
  if (count_boolean_trees(n, alphabet_size) > 100000)
    throw std::invalid_argument(
        "enumerate: instance too large for exhaustive enumeration (n <= 3 binary)");
  std::vector<int> available(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) available[static_cast<std::size_t>(i)] = i;
  std::vector<Tree> trees = enumerate_over(available, alphabet_size, labels);
  std::stable_sort(trees.begin(), trees.end(),
                   [](const Tree& a, const Tree& b) { return a.height() < b.height(); });
  return trees;
}

}  // namespace

Integer count_shapes(int n, int alphabet_size) {
  return count_trees_recursive(n, alphabet_size, 1);
}

Integer count_boolean_trees(int n, int alphabet_size) {
  return count_trees_recursive(n, alphabet_size, 2);
}

std::vector<Tree> enumerate_shapes(int n, int alphabet_size) {
  return enumerate_impl(n, alphabet_size, {Rational(0)});
}

std::vector<Tree> enumerate_boolean_trees(int n, int alphabet_size) {
  return enumerate_impl(n, alphabet_size, {Rational(0), Rational(1)});
}

namespace {

nlohmann::json node_to_json(const Tree& tree, int index) {
  const Tree::Node& node = tree.node(index);
  nlohmann::json j;
  if (node.is_leaf()) {
    j["leaf"] = rational_to_json(node.label);
    return j;
  }
  j["query"] = node.query;
  nlohmann::json children = nlohmann::json::array();
  for (int child : node.children) children.push_back(node_to_json(tree, child));
  j["children"] = std::move(children);
  return j;
}

Tree node_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("tree_from_json: expected object");
  if (doc.contains("leaf")) return Tree::leaf(rational_from_json(doc["leaf"]));
  if (!doc.contains("query") || !doc.contains("children"))
    throw std::invalid_argument("tree_from_json: node needs 'leaf' or 'query'+'children'");
  std::vector<Tree> children;
  for (const auto& c : doc["children"]) children.push_back(node_from_json(c));
  return Tree::internal(doc["query"].get<int>(), std::move(children));
}

}  // namespace

nlohmann::json tree_to_json(const Tree& tree) { return node_to_json(tree, 0); }

Tree tree_from_json(const nlohmann::json& doc) { return node_from_json(doc); }

nlohmann::json randomized_tree_to_json(const RandomizedTree& R) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& component : R.support()) {
    nlohmann::json entry;
    entry["prob"] = rational_to_json(component.probability);
    entry["tree"] = tree_to_json(component.tree);
    trees.push_back(std::move(entry));
  }
  nlohmann::json j;
  j["trees"] = std::move(trees);
  return j;
}

RandomizedTree randomized_tree_from_json(const nlohmann::json& doc) {
  if (doc.is_object() && doc.contains("trees")) {
    std::vector<RandomizedTree::Component> support;
    for (const auto& entry : doc["trees"]) {
      RandomizedTree::Component c;
      c.probability = rational_from_json(entry.at("prob"));
      c.tree = tree_from_json(entry.at("tree"));
      support.push_back(std::move(c));
    }
    return RandomizedTree(std::move(support));
  }
  // A bare deterministic tree is accepted as a point mass.
  return RandomizedTree(tree_from_json(doc));
}

}  // namespace fdt
