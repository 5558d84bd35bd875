#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fdt/distribution.hpp"
#include "fdt/extended.hpp"
#include "fdt/function.hpp"
#include "fdt/rational.hpp"
#include "fdt/scoring.hpp"

namespace fdt {

// A deterministic forecasting decision tree. Internal nodes query an input
// position and have one child per alphabet symbol; leaves carry a
// prediction in [0,1], stored exactly. A Boolean tree is the special case
// with all leaf labels in {0,1}.
//
// Nodes live in one flat vector with the root at index 0, so trees have
// plain value semantics and a canonical layout for equality comparisons.
class Tree {
 public:
  struct Node {
    int query = -1;              // -1 marks a leaf
    std::vector<int> children;   // alphabet_size entries for internal nodes
    Rational label{0};           // leaf prediction

    bool is_leaf() const { return query < 0; }
    bool operator==(const Node&) const = default;
  };

  static Tree leaf(Rational label);
  static Tree internal(int query, std::vector<Tree> children);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  std::vector<Node>& mutable_nodes() { return nodes_; }

  int height() const;
  int leaf_count() const;
  bool is_boolean() const;

  // Checked against a function's shape: symbols in range, no index queried
  // twice on a path, depth <= n.
  void validate(int n, int alphabet_size) const;

  bool operator==(const Tree&) const = default;

 private:
  std::vector<Node> nodes_;
};

struct RunResult {
  Rational prediction;
  int depth = 0;
  std::vector<std::pair<int, int>> path;  // (query index, observed symbol)
  int leaf_index = 0;                     // node index of the reached leaf
};

// Follows the queries of `tree` on input `x` (a string over {'0','1',...}).
RunResult run(const Tree& tree, const std::string& x);

// A finite-support probability distribution over deterministic trees.
class RandomizedTree {
 public:
  struct Component {
    Rational probability;
    Tree tree;
  };

  RandomizedTree() = default;
  explicit RandomizedTree(const Tree& tree);  // point mass
  explicit RandomizedTree(std::vector<Component> support);

  const std::vector<Component>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

  static RandomizedTree mixture(const std::vector<std::pair<Rational, RandomizedTree>>& parts);

 private:
  std::vector<Component> support_;
};

// One realizable outcome of running a randomized tree on a fixed input:
// which deterministic tree was sampled and the leaf it landed in.
struct Branch {
  Rational probability;
  Rational prediction;
  int depth = 0;
  std::size_t tree_index = 0;
  int leaf_index = 0;
};

// Distribution over branches induced on input `x` (one leaf per support
// tree). Probabilities sum to exactly 1.
std::vector<Branch> branch_distribution(const RandomizedTree& R, const std::string& x);

// Expected number of queries, exactly.
Rational cost(const RandomizedTree& R, const std::string& x);
Rational cost(const RandomizedTree& R, const InputDistribution& mu);

// Expected score under `rule`; -inf as soon as a positive-probability
// branch scores -inf.
ExtendedReal score(const RandomizedTree& R, const std::string& x, int f_of_x, ScoringRule rule);
ExtendedReal score(const RandomizedTree& R, const InputDistribution& mu, ScoringRule rule);

// Expected bias when each leaf label q is read out as a Bernoulli(q)
// sample: 1 - 2 Pr[output != f(x)]. Exact.
Rational bias(const RandomizedTree& R, const std::string& x, int f_of_x);
Rational bias(const RandomizedTree& R, const InputDistribution& mu);

// A transcript records everything an observer of the run sees: the sampled
// tree and the root-to-leaf path of queries and answers.
struct Transcript {
  std::size_t tree_index = 0;
  std::vector<std::pair<int, int>> path;

  auto operator<=>(const Transcript&) const = default;
};

struct TranscriptMass {
  Transcript transcript;
  Rational mass;
};

// Exact transcript distribution of R on inputs from mu, in a fixed
// (tree_index, leaf) order. Masses sum to exactly 1.
std::vector<TranscriptMass> transcript_distribution(const RandomizedTree& R,
                                                    const InputDistribution& mu);

// Tree shape enumeration. Shapes are trees whose leaf labels are all 0 and
// are meant to be (re)labeled by the caller. Deterministic order: sorted by
// height, ties by (root query index, recursive child order).
//
// Hard desk-scale limit: throws when the Boolean-tree count would exceed
// 100000 (n = 3 binary, with 244 shapes and 16430 Boolean trees, is the
// largest supported binary instance).
std::vector<Tree> enumerate_shapes(int n, int alphabet_size);

// Every shape with every {0,1} leaf labeling, same ordering.
std::vector<Tree> enumerate_boolean_trees(int n, int alphabet_size);

// Shape/Boolean-tree counts from the recursions S(k) = 1 + k S(k-1)^a and
// T(k) = 2 + k T(k-1)^a; used for the enumeration guard and by tests.
Integer count_shapes(int n, int alphabet_size);
Integer count_boolean_trees(int n, int alphabet_size);

nlohmann::json tree_to_json(const Tree& tree);
Tree tree_from_json(const nlohmann::json& doc);
nlohmann::json randomized_tree_to_json(const RandomizedTree& R);
RandomizedTree randomized_tree_from_json(const nlohmann::json& doc);

}  // namespace fdt
