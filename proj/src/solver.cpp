#include "fdt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fdt/distances.hpp"
#include "fdt/lp.hpp"

namespace fdt {

namespace {

// Per-leaf class masses (a = 0-mass, b = 1-mass) of a shape under mu.
std::map<int, std::pair<Rational, Rational>> leaf_masses(const Tree& shape,
                                                         const InputDistribution& mu) {
  std::map<int, std::pair<Rational, Rational>> masses;
  const PartialFunction& f = mu.function();
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    if (mu.weight(i) == 0) continue;
    int leaf = run(shape, f.input_at(i)).leaf_index;
    auto& entry = masses[leaf];
    if (f.value_at(i) == 0)
      entry.first += mu.weight(i);
    else
      entry.second += mu.weight(i);
  }
  return masses;
}

}  // namespace

OptScoreResult opt_score(const Tree& shape, const InputDistribution& mu) {
  OptScoreResult result;
  result.labeled = shape;
  auto masses = leaf_masses(shape, mu);

  double score = 0.0;
  for (auto& node : result.labeled.mutable_nodes()) {
    if (!node.is_leaf()) continue;
    node.label = Rational(1, 2);
  }
  // Node indices of leaves follow the flat layout; relabel by walking the
  // mass map and writing posteriors in place.
  for (const auto& [leaf, ab] : masses) {
    const auto& [a, b] = ab;
    if (a + b == 0) continue;
    result.labeled.mutable_nodes()[static_cast<std::size_t>(leaf)].label = b / (a + b);
    double sa = std::sqrt(to_double(a));
    double sb = std::sqrt(to_double(b));
    score += (sa - sb) * (sa - sb);
  }
  result.score = score;
  return result;
}

BestResponse best_response(const PartialFunction& f, const InputDistribution& mu) {
  std::vector<Tree> shapes = enumerate_shapes(f.bits(), f.alphabet_size());
  BestResponse best;
  bool have = false;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    OptScoreResult scored = opt_score(shapes[s], mu);
    Rational c = cost(RandomizedTree(shapes[s]), mu);
    double ratio = ratio_pos(to_double(c), positive_part(scored.score));
    if (!have || ratio < best.ratio) {
      best.shape_index = s;
      best.labeled = std::move(scored.labeled);
      best.cost_at_mu = c;
      best.score_at_mu = scored.score;
      best.ratio = ratio;
      have = true;
    }
  }
  return best;
}

namespace {

// A tree frozen into the restricted game: exact per-input cost and score
// vectors. Labels are clamped into [delta, 1-delta] before scoring so the
// score vector is finite and the LP stays well-posed; clamped trees are
// themselves valid strategies, so the restricted game value still upper
// bounds the true game value.
struct RestrictedTree {
  std::vector<Rational> cost_vec;
  std::vector<Rational> score_vec;
};

constexpr double kLabelClamp = 1e-9;

RestrictedTree freeze(const Tree& labeled, const PartialFunction& f) {
  RestrictedTree frozen;
  frozen.cost_vec.resize(f.domain_size());
  frozen.score_vec.resize(f.domain_size());
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    RunResult r = run(labeled, f.input_at(i));
    frozen.cost_vec[i] = r.depth;
    double q = to_double(r.prediction);
    q = std::min(1.0 - kLabelClamp, std::max(kLabelClamp, q));
    double s = eval_outcome(ScoringRule::hs, q, f.value_at(i)).value;
    frozen.score_vec[i] = rational_from_double(s);
  }
  return frozen;
}

// Is there a mu with ratio >= lambda against every frozen tree? Returns the
// witness mu when feasible. The constraint cost - lambda*score >= t with
// max t is exactly "every ratio >= lambda" (score <= 0 makes the
// constraint vacuous, matching ratio = +inf).
struct RestrictedProbe {
  bool feasible = false;
  std::vector<Rational> mu;
};

RestrictedProbe probe_lambda(const std::vector<RestrictedTree>& pool, std::size_t m,
                             const Rational& lambda) {
  // Variables: mu_1..mu_m >= 0, t free. Maximize t.
  LinearProgram lp(m + 1, Sense::maximize);
  lp.objective[m] = 1;
  lp.lower[m] = std::nullopt;
  {
    std::vector<Rational> simplex_row(m + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) simplex_row[i] = 1;
    lp.add_row(std::move(simplex_row), Relation::eq, Rational(1));
  }
  for (const RestrictedTree& tree : pool) {
    std::vector<Rational> row(m + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      row[i] = tree.cost_vec[i] - lambda * tree.score_vec[i];
    row[m] = -1;
    lp.add_row(std::move(row), Relation::ge, Rational(0));
  }
  LpResult result = solve(lp);
  RestrictedProbe probe;
  if (result.status == LpStatus::optimal && result.objective_value >= 0) {
    probe.feasible = true;
    probe.mu.assign(result.primal.begin(), result.primal.begin() + static_cast<long>(m));
  }
  return probe;
}

// Rescale so both classes carry mass exactly 1/2. No-op when a class has
// no mass (the guesser constraints will move the next iterate instead).
std::vector<Rational> balance_project(const PartialFunction& f, std::vector<Rational> mu) {
  Rational mass0(0), mass1(0);
  for (std::size_t i = 0; i < mu.size(); ++i)
    (f.value_at(i) == 0 ? mass0 : mass1) += mu[i];
  if (mass0 == 0 || mass1 == 0) return mu;
  for (std::size_t i = 0; i < mu.size(); ++i)
    mu[i] *= f.value_at(i) == 0 ? Rational(1, 2) / mass0 : Rational(1, 2) / mass1;
  return mu;
}

Tree exact_full_tree(const PartialFunction& f) {
  // Query positions 0..n-1 in order; label each complete path by f where
  // defined, 0 elsewhere.
  const int n = f.bits();
  const int a = f.alphabet_size();
  std::map<std::string, int> table;
  for (std::size_t i = 0; i < f.domain_size(); ++i) table[f.input_at(i)] = f.value_at(i);
  auto build = [&](auto&& self, std::string& prefix, int depth) -> Tree {
    if (depth == n) {
      auto it = table.find(prefix);
      return Tree::leaf(Rational(it == table.end() ? 0 : it->second));
    }
    std::vector<Tree> children;
    for (int sym = 0; sym < a; ++sym) {
      prefix.push_back(static_cast<char>('0' + sym));
      children.push_back(self(self, prefix, depth + 1));
      prefix.pop_back();
    }
    return Tree::internal(depth, std::move(children));
  };
  std::string prefix;
  return build(build, prefix, 0);
}

}  // namespace

HardCertificate solve_hard(const PartialFunction& f, double tol, int max_iter) {
  if (f.is_constant())
    throw std::invalid_argument("solve_hard: constant function (the game value is 0)");
  if (tol <= 0) throw std::invalid_argument("solve_hard: tol must be positive");

  const std::size_t m = f.domain_size();
  std::vector<RestrictedTree> pool;
  pool.push_back(freeze(exact_full_tree(f), f));

  const Rational bis_tol = rationalize(rational_from_double(tol / 4), Integer(1000000000));
  Rational lo(0);                 // always feasible
  Rational hi(f.bits() + 1);      // infeasible thanks to the seeded full tree

  std::vector<Rational> mu_weights(m, Rational(1, static_cast<unsigned long>(m)));
  double best_seen = 0.0;
  std::vector<Rational> best_mu = mu_weights;

  HardCertificate cert{InputDistribution(f, mu_weights), 0, 0, tol, 0, false, Rational(0), {}};

  for (int iter = 1; iter <= max_iter; ++iter) {
    // Restricted game by bisection; keep the argmax mu of the last
    // feasible probe.
    Rational cur_lo = lo, cur_hi = hi;
    std::vector<Rational> mu_probe = mu_weights;
    {
      RestrictedProbe at_lo = probe_lambda(pool, m, cur_lo);
      if (at_lo.feasible) mu_probe = at_lo.mu;
    }
    while (cur_hi - cur_lo > bis_tol) {
      Rational mid = (cur_lo + cur_hi) / 2;
      RestrictedProbe probe = probe_lambda(pool, m, mid);
      if (probe.feasible) {
        cur_lo = mid;
        mu_probe = probe.mu;
      } else {
        cur_hi = mid;
      }
    }
    double lambda_r = to_double(cur_hi);

    mu_weights = balance_project(f, std::move(mu_probe));
    InputDistribution mu(f, mu_weights);
    BestResponse br = best_response(f, mu);

    if (br.ratio > best_seen) {
      best_seen = br.ratio;
      best_mu = mu_weights;
    }

    cert.iterations = iter;
    if (std::isfinite(br.ratio) && br.ratio >= lambda_r - tol) {
      cert.mu = std::move(mu);
      cert.lambda_star = br.ratio;
      cert.upper_bound = lambda_r;
      cert.converged = true;
      break;
    }

    RestrictedTree frozen = freeze(br.labeled, f);
    bool duplicate = false;
    for (const RestrictedTree& existing : pool)
      duplicate = duplicate || (existing.cost_vec == frozen.cost_vec &&
                                existing.score_vec == frozen.score_vec);
    if (!duplicate) pool.push_back(std::move(frozen));

    // The restricted value only decreases, and every best-response value
    // lower bounds the game value; restart the bracket accordingly.
    hi = cur_hi;
    lo = std::max(Rational(0),
                  std::min(Rational(rational_from_double(std::max(0.0, best_seen)) - bis_tol), hi));
  }

  if (!cert.converged) {
    InputDistribution mu(f, best_mu);
    BestResponse br = best_response(f, mu);
    cert.mu = std::move(mu);
    cert.lambda_star = br.ratio;
    cert.upper_bound = to_double(hi);
  }

  cert.imbalance = is_balanced(cert.mu).imbalance;

  // Try to simplify mu by continued-fraction rounding; keep it only when
  // the certificate value survives re-verification.
  {
    std::vector<Rational> simplified = cert.mu.weights();
    for (Rational& w : simplified) w = rationalize(w, Integer(1000000));
    simplified = balance_project(f, std::move(simplified));
    Rational total(0);
    for (const Rational& w : simplified) total += w;
    bool ok = total == 1;
    for (const Rational& w : simplified) ok = ok && w >= 0;
    if (ok) {
      InputDistribution mu_simple(f, simplified);
      BestResponse br = best_response(f, mu_simple);
      if (br.ratio >= cert.lambda_star - cert.tolerance) {
        cert.mu = std::move(mu_simple);
        cert.lambda_star = std::max(cert.lambda_star, br.ratio);
        cert.imbalance = is_balanced(cert.mu).imbalance;
      }
    }
  }

  // Active best responses at the final mu.
  {
    std::vector<Tree> shapes = enumerate_shapes(f.bits(), f.alphabet_size());
    for (const Tree& shape : shapes) {
      OptScoreResult scored = opt_score(shape, cert.mu);
      Rational c = cost(RandomizedTree(shape), cert.mu);
      double ratio = ratio_pos(to_double(c), positive_part(scored.score));
      if (std::isfinite(ratio) && ratio <= cert.lambda_star + cert.tolerance) {
        cert.support_trees.push_back(
            SupportTreeInfo{std::move(scored.labeled), c, scored.score, ratio});
      }
    }
  }
  return cert;
}

SplitHardPair split(const PartialFunction& f, const HardCertificate& cert) {
  Rational imbalance = is_balanced(cert.mu).imbalance;
  Rational limit = rationalize(rational_from_double(10.0 * cert.tolerance), Integer(1000000000));
  if (abs(imbalance) > limit)
    throw std::invalid_argument("split: mu is grossly unbalanced; solver failure");

  Rational mass0 = cert.mu.class_mass(0);
  Rational mass1 = cert.mu.class_mass(1);
  if (mass0 == 0 || mass1 == 0)
    throw std::invalid_argument("split: a class has no mass");

  std::vector<Rational> w0(cert.mu.size(), Rational(0));
  std::vector<Rational> w1(cert.mu.size(), Rational(0));
  for (std::size_t i = 0; i < cert.mu.size(); ++i) {
    if (f.value_at(i) == 0)
      w0[i] = cert.mu.weight(i) / mass0;
    else
      w1[i] = cert.mu.weight(i) / mass1;
  }
  return SplitHardPair{InputDistribution(f, std::move(w0)), InputDistribution(f, std::move(w1))};
}

namespace {

// h^2 between the transcript distributions of a deterministic tree on mu0
// and mu1, through the distances module.
double transcript_h2(const Tree& tree, const InputDistribution& mu0,
                     const InputDistribution& mu1) {
  RandomizedTree R(tree);
  auto t0 = transcript_distribution(R, mu0);
  auto t1 = transcript_distribution(R, mu1);

  // Transcripts of a single deterministic tree are keyed by their path;
  // merge the two distributions over the union of paths.
  std::map<std::vector<std::pair<int, int>>, std::pair<Rational, Rational>> merged;
  for (const auto& tm : t0) merged[tm.transcript.path].first += tm.mass;
  for (const auto& tm : t1) merged[tm.transcript.path].second += tm.mass;

  FinitePair pair;
  pair.w = 0.5;
  int counter = 0;
  for (const auto& [path, masses] : merged) {
    pair.support.push_back("t" + std::to_string(counter++));
    pair.nu0.push_back(to_double(masses.first));
    pair.nu1.push_back(to_double(masses.second));
  }
  return distance(pair, DistanceMeasure::h2);
}

}  // namespace

RatioBoundReport verify_ratio_bound(const PartialFunction& f, const HardCertificate& cert,
                                    int r_f) {
  SplitHardPair pair = split(f, cert);
  RatioBoundReport report;
  report.lambda_star = cert.lambda_star;
  report.rhs = static_cast<double>(r_f) / 240.0;
  report.min_ratio = std::numeric_limits<double>::infinity();

  std::vector<Tree> shapes = enumerate_shapes(f.bits(), f.alphabet_size());
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    OptScoreResult scored = opt_score(shapes[s], cert.mu);
    ShapeRatioRow row;
    row.shape_index = s;
    row.cost_mu = cost(RandomizedTree(shapes[s]), cert.mu);
    row.cost_mu0 = cost(RandomizedTree(shapes[s]), pair.mu0);
    row.cost_mu1 = cost(RandomizedTree(shapes[s]), pair.mu1);
    row.h2_transcripts = transcript_h2(scored.labeled, pair.mu0, pair.mu1);
    row.opt_score_value = scored.score;
    row.ratio = ratio_pos(to_double(row.cost_mu), positive_part(row.h2_transcripts));
    report.max_h2_gap = std::max(report.max_h2_gap,
                                 std::abs(row.h2_transcripts - row.opt_score_value));
    row.pass = std::abs(row.h2_transcripts - row.opt_score_value) <= 1e-9 &&
               row.ratio >= cert.lambda_star - cert.tolerance;
    if (std::isfinite(row.ratio)) report.min_ratio = std::min(report.min_ratio, row.ratio);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  report.all_pass = report.all_pass && report.min_ratio >= report.rhs - 1e-9;
  return report;
}

ShaltielReport verify_shaltiel_free(const PartialFunction& f, const SplitHardPair& pair,
                                    int r_f) {
  // mu = (mu0 + mu1)/2 for the posterior labeling.
  std::vector<Rational> w(pair.mu0.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = (pair.mu0.weight(i) + pair.mu1.weight(i)) / 2;
  InputDistribution mu(f, std::move(w));

  ShaltielReport report;
  report.rhs = static_cast<double>(r_f) / 3000.0;
  report.min_ratio = std::numeric_limits<double>::infinity();

  std::vector<Tree> shapes = enumerate_shapes(f.bits(), f.alphabet_size());
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    OptScoreResult scored = opt_score(shapes[s], mu);
    ShaltielRow row;
    row.shape_index = s;
    Rational c0 = cost(RandomizedTree(shapes[s]), pair.mu0);
    Rational c1 = cost(RandomizedTree(shapes[s]), pair.mu1);
    row.min_cost = std::min(c0, c1);
    row.h2_transcripts = transcript_h2(scored.labeled, pair.mu0, pair.mu1);
    row.pass = to_double(row.min_cost) >= row.h2_transcripts * report.rhs - 1e-9;
    double ratio = ratio_pos(to_double(row.min_cost), positive_part(row.h2_transcripts));
    if (std::isfinite(ratio)) report.min_ratio = std::min(report.min_ratio, ratio);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace fdt
