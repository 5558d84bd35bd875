#include "fdt/oracle.hpp"

#include <map>
#include <stdexcept>

namespace fdt {

RandomizedTree WitnessMixture::as_randomized() const {
  std::vector<RandomizedTree::Component> support;
  for (const auto& c : components)
    support.push_back(RandomizedTree::Component{c.probability, c.tree});
  return RandomizedTree(std::move(support));
}

Rational tree_error_probability(const Tree& tree, const PartialFunction& f, std::size_t input) {
  Rational q = run(tree, f.input_at(input)).prediction;
  return f.value_at(input) == 1 ? Rational(1 - q) : q;
}

Rational tree_bias(const Tree& tree, const PartialFunction& f, const InputDistribution& mu) {
  Rational acc(0);
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    if (mu.weight(i) == 0) continue;
    acc += mu.weight(i) * (1 - 2 * tree_error_probability(tree, f, i));
  }
  return acc;
}

Rational tree_cost(const Tree& tree, const PartialFunction& f, const InputDistribution& mu) {
  Rational acc(0);
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    if (mu.weight(i) == 0) continue;
    acc += mu.weight(i) * run(tree, f.input_at(i)).depth;
  }
  return acc;
}

int det_complexity(const PartialFunction& f) {
  // A shape computes f exactly iff every leaf is pure: all domain inputs
  // reaching it share one f value. Shapes come sorted by height.
  for (const Tree& shape : enumerate_shapes(f.bits(), f.alphabet_size())) {
    std::map<int, std::pair<bool, int>> leaf_class;  // leaf node -> (seen, value)
    bool pure = true;
    for (std::size_t i = 0; i < f.domain_size() && pure; ++i) {
      int leaf = run(shape, f.input_at(i)).leaf_index;
      auto [it, inserted] = leaf_class.try_emplace(leaf, true, f.value_at(i));
      if (!inserted && it->second.second != f.value_at(i)) pure = false;
    }
    if (pure) return shape.height();
  }
  throw std::logic_error("det_complexity: no exact tree found (unreachable)");
}

namespace {

// Distinct per-input error vectors over Boolean trees of height <= depth,
// each with a representative tree (first in enumeration order).
struct ErrorColumns {
  std::vector<std::vector<Rational>> error_vectors;
  std::vector<Tree> representatives;
};

ErrorColumns collect_error_columns(const PartialFunction& f, const std::vector<Tree>& trees,
                                   int depth) {
  ErrorColumns out;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (const Tree& tree : trees) {
    if (tree.height() > depth) continue;
    std::vector<Rational> err(f.domain_size());
    for (std::size_t i = 0; i < f.domain_size(); ++i)
      err[i] = tree_error_probability(tree, f, i);
    if (seen.emplace(err, out.error_vectors.size()).second) {
      out.error_vectors.push_back(std::move(err));
      out.representatives.push_back(tree);
    }
  }
  return out;
}

}  // namespace

RandomizedWorstReport randomized_worst(const PartialFunction& f, const Rational& eps) {
  if (eps < 0 || eps >= Rational(1, 2))
    throw std::invalid_argument("randomized_worst: eps must be in [0, 1/2)");
  std::vector<Tree> trees = enumerate_boolean_trees(f.bits(), f.alphabet_size());

  for (int depth = 0; depth <= f.bits(); ++depth) {
    ErrorColumns columns = collect_error_columns(f, trees, depth);
    const std::size_t k = columns.error_vectors.size();

    // Feasibility: p >= 0, sum p = 1, sum_D p_D err_D(x) <= eps for all x.
    LinearProgram lp(k, Sense::maximize);
    {
      std::vector<Rational> ones(k, Rational(1));
      lp.add_row(std::move(ones), Relation::eq, Rational(1));
    }
    for (std::size_t x = 0; x < f.domain_size(); ++x) {
      std::vector<Rational> row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = columns.error_vectors[j][x];
      lp.add_row(std::move(row), Relation::le, eps);
    }
    LpResult result = solve(lp);
    if (result.status == LpStatus::optimal) {
      RandomizedWorstReport report;
      report.depth = depth;
      report.eps = eps;
      for (std::size_t j = 0; j < k; ++j)
        if (result.primal[j] != 0)
          report.witness.components.push_back(
              WitnessMixture::Component{result.primal[j], columns.representatives[j]});
      return report;
    }
  }
  throw std::logic_error("randomized_worst: full-depth tree must be feasible (unreachable)");
}

DistributionalReport distributional(const PartialFunction& f, const InputDistribution& mu,
                                    const Rational& gamma) {
  if (gamma <= 0 || gamma > 1)
    throw std::invalid_argument("distributional: gamma must be in (0,1]");
  std::vector<Tree> trees = enumerate_boolean_trees(f.bits(), f.alphabet_size());

  std::vector<ParetoEnvelope::Point> points(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    points[i].bias = tree_bias(trees[i], f, mu);
    points[i].cost = tree_cost(trees[i], f, mu);
    points[i].tag = i;
  }
  ParetoEnvelope envelope = ParetoEnvelope::from_points(points);

  DistributionalReport report;
  report.gamma = gamma;
  std::optional<Rational> value = envelope.evaluate(gamma);
  if (!value) {
    report.achievable = false;
    return report;
  }
  report.expected_cost = *value;

  // Witness: the envelope point (or two-point mixture) achieving the value.
  const auto& pts = envelope.breakpoints();
  if (gamma <= pts.front().bias) {
    report.witness.components.push_back(
        WitnessMixture::Component{Rational(1), trees[pts.front().tag]});
  } else {
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (gamma <= pts[i].bias) {
        Rational t = (gamma - pts[i - 1].bias) / (pts[i].bias - pts[i - 1].bias);
        if (t != 1)
          report.witness.components.push_back(
              WitnessMixture::Component{1 - t, trees[pts[i - 1].tag]});
        report.witness.components.push_back(WitnessMixture::Component{t, trees[pts[i].tag]});
        break;
      }
    }
  }
  return report;
}

AvgWorstReport verify_avg_worst(const PartialFunction& f, const InputDistribution& mu,
                                const std::vector<Rational>& gammas) {
  AvgWorstReport report;
  report.r_f = randomized_worst(f, Rational(1, 3)).depth;
  for (const Rational& gamma : gammas) {
    AvgWorstRow row;
    row.gamma = gamma;
    row.threshold = gamma * gamma * report.r_f / 500;
    DistributionalReport dist = distributional(f, mu, gamma);
    row.achievable = dist.achievable;
    if (dist.achievable) {
      row.avg_cost = dist.expected_cost;
      row.pass = row.avg_cost >= row.threshold;
    } else {
      row.pass = true;  // +inf exceeds every threshold
    }
    report.rows.push_back(std::move(row));
    report.all_pass = report.all_pass && report.rows.back().pass;
  }
  return report;
}

}  // namespace fdt
