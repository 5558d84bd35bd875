#include "fdt/amplify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fdt/rng.hpp"

namespace fdt {

Rational combine(const std::vector<Rational>& predictions) {
  if (predictions.empty()) throw std::invalid_argument("combine: empty prediction list");
  bool has_zero = false, has_one = false;
  for (const Rational& q : predictions) {
    if (q < 0 || q > 1) throw std::invalid_argument("combine: prediction outside [0,1]");
    if (q == 0) has_zero = true;
    if (q == 1) has_one = true;
  }
  if (has_zero && has_one) return Rational(1, 2);
  if (has_zero) return Rational(0);  // product is +inf
  if (has_one) return Rational(1);   // product has a zero factor
  Rational product(1);
  for (const Rational& q : predictions) product *= (1 - q) / q;
  return 1 / (1 + product);
}

KFoldTree amplified_tree(const RandomizedTree& R, int k) {
  if (k < 1) throw std::invalid_argument("amplified_tree: k must be >= 1");
  return KFoldTree{R, k};
}

namespace {

struct MergedBranch {
  Rational probability;
  Rational prediction;
  int depth = 0;
};

std::vector<MergedBranch> merged_branches(const RandomizedTree& R, const std::string& x) {
  std::vector<MergedBranch> merged;
  for (const Branch& b : branch_distribution(R, x)) {
    if (b.probability == 0) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const MergedBranch& m) {
      return m.prediction == b.prediction;
    });
    if (it == merged.end())
      merged.push_back(MergedBranch{b.probability, b.prediction, b.depth});
    else
      it->probability += b.probability;
  }
  return merged;
}

Rational rational_pow(const Rational& base, int exponent) {
  Rational acc(1);
  for (int i = 0; i < exponent; ++i) acc *= base;
  return acc;
}

// Walks all count vectors (c_1,...,c_m) with sum k over the distinct
// branch predictions; calls visit(multinomial probability, combined
// prediction). C(k+m-1, m-1) terms; m is tiny after merging.
template <typename Visit>
void for_each_composition(const std::vector<MergedBranch>& branches, int k, Visit visit) {
  const std::size_t m = branches.size();
  std::vector<int> counts(m, 0);
  std::vector<Rational> preds;

  auto rec = [&](auto&& self, std::size_t index, int remaining, Rational coeff) -> void {
    if (index + 1 == m) {
      counts[index] = remaining;
      Rational prob = coeff * rational_pow(branches[index].probability, remaining);
      preds.clear();
      for (std::size_t i = 0; i < m; ++i)
        for (int c = 0; c < counts[i]; ++c) preds.push_back(branches[i].prediction);
      visit(prob, combine(preds));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[index] = c;
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(remaining),
                   static_cast<unsigned long>(c));
      Rational next = coeff * Rational(binom) * rational_pow(branches[index].probability, c);
      self(self, index + 1, remaining - c, next);
    }
  };
  rec(rec, 0, k, Rational(1));
}

}  // namespace

double kfold_score(const KFoldTree& T, const std::string& x, int f_of_x) {
  auto branches = merged_branches(T.base, x);
  double acc = 0.0;
  bool minus_infinity = false;
  for_each_composition(branches, T.repetitions, [&](const Rational& prob, const Rational& q) {
    if (prob == 0 || minus_infinity) return;
    ExtendedReal s = eval_outcome(ScoringRule::hs, to_double(q), f_of_x);
    if (s.is_neg_inf()) {
      minus_infinity = true;
      return;
    }
    acc += to_double(prob) * s.value;
  });
  if (minus_infinity) return -std::numeric_limits<double>::infinity();
  return acc;
}

Rational kfold_bias(const KFoldTree& T, const std::string& x, int f_of_x) {
  auto branches = merged_branches(T.base, x);
  Rational acc(0);
  for_each_composition(branches, T.repetitions, [&](const Rational& prob, const Rational& q) {
    Rational term = f_of_x == 1 ? Rational(2 * q - 1) : Rational(1 - 2 * q);
    acc += prob * term;
  });
  return acc;
}

Rational kfold_cost(const KFoldTree& T, const std::string& x) {
  return Rational(T.repetitions) * cost(T.base, x);
}

double amplified_score_formula(double score, int k) {
  if (std::isinf(score) && score < 0) return score;
  return 1.0 - std::pow(1.0 - score, k);
}

RandomizedTree bias_to_forecast(const RandomizedTree& R, const Rational& gamma) {
  if (gamma <= 0 || gamma > 1)
    throw std::invalid_argument("bias_to_forecast: gamma outside (0,1]");
  std::vector<RandomizedTree::Component> support;
  for (const auto& component : R.support()) {
    if (!component.tree.is_boolean())
      throw std::invalid_argument("bias_to_forecast: tree has non-Boolean leaves");
    Tree relabeled = component.tree;
    for (Tree::Node& node : relabeled.mutable_nodes()) {
      if (!node.is_leaf()) continue;
      node.label = node.label == 1 ? Rational((1 + gamma) / 2) : Rational((1 - gamma) / 2);
    }
    support.push_back(RandomizedTree::Component{component.probability, std::move(relabeled)});
  }
  return RandomizedTree(std::move(support));
}

RandomizedTree forecast_to_bias(const RandomizedTree& R) { return R; }

AmpBounds amp_bounds(double x, double k) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("amp_bounds: x outside [0,1]");
  if (k < 1.0) throw std::domain_error("amp_bounds: k must be >= 1");
  double clipped = std::min(k * x, 1.0);
  return AmpBounds{clipped / 2.0, 1.0 - std::pow(1.0 - x, k), clipped};
}

MajorityAmplified majority_amplify(const RandomizedTree& R, const Rational& gamma) {
  if (gamma <= 0) throw std::invalid_argument("majority_amplify: gamma must be positive");
  Rational reps = 2 / (gamma * gamma);
  Integer k_int;
  mpz_cdiv_q(k_int.get_mpz_t(), reps.get_num_mpz_t(), reps.get_den_mpz_t());
  int k = static_cast<int>(k_int.get_si());
  RandomizedTree forecast = bias_to_forecast(R, gamma);
  return MajorityAmplified{amplified_tree(forecast_to_bias(forecast), k), k};
}

double worst_ratio(const RandomizedTree& R, const PartialFunction& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    double c = to_double(cost(R, f.input_at(i)));
    double s = score(R, f.input_at(i), f.value_at(i), ScoringRule::hs).value;
    worst = std::max(worst, ratio_pos(c, positive_part(s)));
  }
  return worst;
}

namespace {

struct TrialOutcome {
  bool error = false;
  std::uint64_t queries = 0;
};

class OdometerSimulator {
 public:
  OdometerSimulator(const RandomizedTree& R, double Y)
      : R_(R),
        run_cutoff_(static_cast<std::uint64_t>(OdometerConstants::kTruncationFactor * Y)),
        phase1_target_(OdometerConstants::kPhase1Factor * Y),
        query_cap_(static_cast<std::uint64_t>(OdometerConstants::kFinalCutoffFactor * Y)) {
    for (const auto& component : R.support())
      cdf_.push_back((cdf_.empty() ? 0.0 : cdf_.back()) + to_double(component.probability));
  }

  std::uint64_t query_cap() const { return query_cap_; }

  TrialOutcome trial(const std::string& x, int f_of_x, SplitMix64& rng) const {
    std::uint64_t total = 0;
    bool capped = false;

    // Phase 1: learn the repetition count L from the query odometer.
    std::uint64_t phase1_queries = 0;
    std::uint64_t L = 0;
    while (static_cast<double>(phase1_queries) < phase1_target_) {
      double pred = truncated_run(x, rng, total, capped);
      (void)pred;  // phase-1 predictions are discarded
      if (capped) break;
      phase1_queries = total;
      ++L;
      if (L > kRunGuard) break;  // zero-cost pathology guard
    }

    // Phase 2: rerun L times and combine the predictions.
    double prediction = 0.5;
    if (!capped) {
      std::uint64_t zeros = 0, ones = 0;
      double product = 1.0;
      for (std::uint64_t i = 0; i < L && !capped; ++i) {
        double q = truncated_run(x, rng, total, capped);
        if (capped) break;
        if (q == 0.0) ++zeros;
        else if (q == 1.0) ++ones;
        else product *= (1.0 - q) / q;
      }
      if (!capped) {
        if (zeros > 0 && ones > 0) prediction = 0.5;
        else if (zeros > 0) prediction = 0.0;
        else if (ones > 0) prediction = 1.0;
        else prediction = 1.0 / (1.0 + product);
      }
    }

    // Bernoulli read-out of the final forecast.
    int output = rng.next_double() < prediction ? 1 : 0;
    return TrialOutcome{output != f_of_x, total};
  }

 private:
  static constexpr std::uint64_t kRunGuard = 1000000;

  // One run of R truncated at 2Y queries (prediction 1/2 on cutoff). Also
  // enforces the global 240Y cap; when it trips, `capped` is set and the
  // caller must output 1/2.
  double truncated_run(const std::string& x, SplitMix64& rng, std::uint64_t& total,
                       bool& capped) const {
    double u = rng.next_double();
    std::size_t pick = cdf_.size() - 1;
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
      if (u < cdf_[i]) {
        pick = i;
        break;
      }
    }
    const Tree& tree = R_.support()[pick].tree;
    int index = 0;
    std::uint64_t queries = 0;
    while (!tree.node(index).is_leaf()) {
      if (queries >= run_cutoff_) return 0.5;
      if (total >= query_cap_) {
        capped = true;
        return 0.5;
      }
      const Tree::Node& node = tree.node(index);
      int symbol = x[static_cast<std::size_t>(node.query)] - '0';
      index = node.children[static_cast<std::size_t>(symbol)];
      ++queries;
      ++total;
    }
    return to_double(tree.node(index).label);
  }

  const RandomizedTree& R_;
  std::uint64_t run_cutoff_;
  double phase1_target_;
  std::uint64_t query_cap_;
  std::vector<double> cdf_;
};

}  // namespace

OdometerReport odometer_amplifier(const RandomizedTree& R, const PartialFunction& f, double Y,
                                  std::uint64_t trials, std::uint64_t seed, int threads) {
  if (!(Y > 0.0) || !std::isfinite(Y))
    throw std::invalid_argument("odometer_amplifier: Y must be positive and finite");
  if (trials < 10000)
    throw std::invalid_argument("odometer_amplifier: need at least 10^4 trials");
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;

  OdometerSimulator sim(R, Y);
  OdometerReport report;
  report.Y = Y;
  report.query_cap = sim.query_cap();

  for (std::size_t xi = 0; xi < f.domain_size(); ++xi) {
    const std::string& x = f.input_at(xi);
    int fx = f.value_at(xi);

    struct Partial {
      std::uint64_t errors = 0;
      std::uint64_t max_queries = 0;
      std::uint64_t query_sum = 0;
    };
    std::vector<Partial> partials(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        Partial& p = partials[static_cast<std::size_t>(t)];
        for (std::uint64_t trial = static_cast<std::uint64_t>(t); trial < trials;
             trial += static_cast<std::uint64_t>(threads)) {
          SplitMix64 rng = stream_rng(seed, xi, trial);
          TrialOutcome outcome = sim.trial(x, fx, rng);
          if (outcome.error) ++p.errors;
          p.max_queries = std::max(p.max_queries, outcome.queries);
          p.query_sum += outcome.queries;
        }
      });
    }
    for (auto& th : pool) th.join();

    OdometerInputReport input_report;
    input_report.input = x;
    input_report.f_value = fx;
    input_report.trials = trials;
    for (const Partial& p : partials) {
      input_report.errors += p.errors;
      input_report.max_queries = std::max(input_report.max_queries, p.max_queries);
      input_report.mean_queries += static_cast<double>(p.query_sum);
    }
    input_report.error_rate =
        static_cast<double>(input_report.errors) / static_cast<double>(trials);
    input_report.mean_queries /= static_cast<double>(trials);
    report.per_input.push_back(std::move(input_report));
  }

  for (const auto& input_report : report.per_input) {
    report.worst_input_error_estimate =
        std::max(report.worst_input_error_estimate, input_report.error_rate);
    report.worst_input_query_estimate =
        std::max(report.worst_input_query_estimate, input_report.max_queries);
  }
  return report;
}

}  // namespace fdt
