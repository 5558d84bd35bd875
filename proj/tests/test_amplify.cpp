#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdt/amplify.hpp"
#include "fdt/rng.hpp"

using namespace fdt;

namespace {

Tree boolean_leaf(int b) { return Tree::leaf(Rational(b)); }

Tree xor2_tree() {
  auto leafs = [](int a, int b) {
    std::vector<Tree> children;
    children.push_back(Tree::leaf(Rational(a)));
    children.push_back(Tree::leaf(Rational(b)));
    return children;
  };
  std::vector<Tree> children;
  children.push_back(Tree::internal(1, leafs(0, 1)));
  children.push_back(Tree::internal(1, leafs(1, 0)));
  return Tree::internal(0, std::move(children));
}

// Randomized Boolean tree with worst-case bias exactly gamma on every
// input: perfect tree w.p. gamma, the two constant guesses w.p.
// (1-gamma)/2 each.
RandomizedTree biased_xor2(const Rational& gamma) {
  return RandomizedTree::mixture({{gamma, RandomizedTree(xor2_tree())},
                                  {(1 - gamma) / 2, RandomizedTree(boolean_leaf(0))},
                                  {(1 - gamma) / 2, RandomizedTree(boolean_leaf(1))}});
}

RandomizedTree random_forecast_tree(SplitMix64& rng, int n, std::size_t support) {
  auto shapes = enumerate_shapes(n, 2);
  std::vector<RandomizedTree::Component> components;
  unsigned long total = 0;
  std::vector<unsigned long> raw(support);
  for (auto& w : raw) {
    w = 1 + rng.next() % 8;
    total += w;
  }
  for (std::size_t i = 0; i < support; ++i) {
    Tree tree = shapes[rng.next() % shapes.size()];
    for (auto& node : tree.mutable_nodes()) {
      if (!node.is_leaf()) continue;
      node.label = Rational(static_cast<long>(1 + rng.next() % 15), 16);
    }
    components.push_back({Rational(static_cast<long>(raw[i]), static_cast<long>(total)),
                          std::move(tree)});
  }
  return RandomizedTree(std::move(components));
}

}  // namespace

TEST_CASE("combine: neutral, clash, and product inputs") {
  CHECK(combine({Rational(1, 2), Rational(1, 2)}) == Rational(1, 2));
  CHECK(combine({Rational(1), Rational(0)}) == Rational(1, 2));
  CHECK(combine({Rational(4, 5), Rational(4, 5)}) == Rational(16, 17));
  CHECK(combine({Rational(1, 3)}) == Rational(1, 3));
  CHECK(combine({Rational(0), Rational(1, 4)}) == Rational(0));
  CHECK(combine({Rational(1), Rational(3, 4)}) == Rational(1));
  CHECK_THROWS(combine({}));
}

TEST_CASE("combine is symmetric") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> qs;
    for (int i = 0; i < 4; ++i) qs.push_back(Rational(static_cast<long>(rng.next() % 17), 16));
    std::vector<Rational> shuffled = {qs[2], qs[0], qs[3], qs[1]};
    CHECK(combine(qs) == combine(shuffled));
  }
}

TEST_CASE("amplification identity: exact k-fold expectation equals 1-(1-s)^k") {
  auto f = make_xor(2);
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    RandomizedTree R = random_forecast_tree(rng, 2, 1 + rng.next() % 3);
    for (int k : {1, 2, 3, 5}) {
      KFoldTree amplified = amplified_tree(R, k);
      for (std::size_t i = 0; i < f.domain_size(); ++i) {
        double s = score(R, f.input_at(i), f.value_at(i), ScoringRule::hs).value;
        double expected = amplified_score_formula(s, k);
        double actual = kfold_score(amplified, f.input_at(i), f.value_at(i));
        CHECK(std::abs(actual - expected) <= 1e-10);
        CHECK(kfold_cost(amplified, f.input_at(i)) ==
              Rational(k) * cost(R, f.input_at(i)));
      }
    }
  }
}

TEST_CASE("k = 1 leaves the score unchanged; perfect scores stay 1") {
  auto f = make_xor(2);
  RandomizedTree perfect(xor2_tree());
  for (int k : {1, 2, 5}) {
    KFoldTree amplified = amplified_tree(RandomizedTree(xor2_tree()), k);
    for (std::size_t i = 0; i < f.domain_size(); ++i)
      CHECK(kfold_score(amplified, f.input_at(i), f.value_at(i)) == doctest::Approx(1.0));
  }
  CHECK_THROWS(amplified_tree(perfect, 0));
}

TEST_CASE("bias_to_forecast: relabeled leaves and the conversion bound") {
  auto f = make_xor(2);
  Rational gamma(3, 5);
  RandomizedTree biased = biased_xor2(gamma);
  RandomizedTree forecast = bias_to_forecast(biased, gamma);

  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    CHECK(cost(forecast, f.input_at(i)) == cost(biased, f.input_at(i)));
    double s = score(forecast, f.input_at(i), f.value_at(i), ScoringRule::hs).value;
    double bound = 1.0 - std::sqrt(1.0 - to_double(gamma * gamma));
    CHECK(s >= bound - 1e-12);
    // Bias is exactly gamma on every input, so the bound is tight.
    CHECK(s == doctest::Approx(bound));
    CHECK(bound >= to_double(gamma * gamma) / 2.0);
  }

  // gamma = 1 relabels to exact 0/1.
  RandomizedTree exact = bias_to_forecast(RandomizedTree(xor2_tree()), Rational(1));
  CHECK(score(exact, "01", 1, ScoringRule::hs).value == doctest::Approx(1.0));
  CHECK_THROWS(bias_to_forecast(biased, Rational(0)));
  CHECK_THROWS(bias_to_forecast(forecast, gamma));  // leaves no longer Boolean
}

TEST_CASE("forecast_to_bias: bias dominates hs score (random forecast trees)") {
  auto f = make_xor(2);
  SplitMix64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    RandomizedTree R = random_forecast_tree(rng, 2, 2);
    RandomizedTree converted = forecast_to_bias(R);
    for (std::size_t i = 0; i < f.domain_size(); ++i) {
      double s = score(R, f.input_at(i), f.value_at(i), ScoringRule::hs).value;
      Rational b = bias(converted, f.input_at(i), f.value_at(i));
      CHECK(to_double(b) >= s - 1e-12);
    }
  }
  // Leaf 1/2 gives bias 0; leaf 1 on a 1-input gives bias 1.
  CHECK(bias(RandomizedTree(Tree::leaf(Rational(1, 2))), "11", 1) == 0);
  CHECK(bias(RandomizedTree(Tree::leaf(Rational(1))), "11", 1) == 1);
}

TEST_CASE("conversion round trip keeps worst-case bias above 1 - sqrt(1-gamma^2)") {
  // Exact check over every Boolean tree on n <= 2 with positive worst-case bias.
  for (int n : {1, 2}) {
    auto f = n == 1 ? make_xor(1) : make_xor(2);
    for (const Tree& tree : enumerate_boolean_trees(n, 2)) {
      RandomizedTree R(tree);
      Rational gamma(1);
      for (std::size_t i = 0; i < f.domain_size(); ++i)
        gamma = std::min(gamma, bias(R, f.input_at(i), f.value_at(i)));
      if (gamma <= 0) continue;
      RandomizedTree round_trip = forecast_to_bias(bias_to_forecast(R, gamma));
      double bound = 1.0 - std::sqrt(1.0 - to_double(gamma * gamma));
      for (std::size_t i = 0; i < f.domain_size(); ++i) {
        Rational b = bias(round_trip, f.input_at(i), f.value_at(i));
        CHECK(to_double(b) >= bound - 1e-12);
        CHECK(to_double(b) >= to_double(gamma * gamma) / 2.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("amp_bounds sandwich") {
  auto b1 = amp_bounds(1.0, 1.0);
  CHECK(b1.lower == doctest::Approx(0.5));
  CHECK(b1.value == doctest::Approx(1.0));
  CHECK(b1.upper == doctest::Approx(1.0));

  auto b2 = amp_bounds(0.1, 5.0);
  CHECK(b2.lower == doctest::Approx(0.25));
  CHECK(b2.value == doctest::Approx(0.40951));
  CHECK(b2.upper == doctest::Approx(0.5));

  auto b3 = amp_bounds(0.0, 7.0);
  CHECK(b3.lower == 0.0);
  CHECK(b3.value == 0.0);
  CHECK(b3.upper == 0.0);

  for (int xi = 0; xi <= 100; ++xi) {
    for (int ki = 0; ki < 100; ++ki) {
      double x = xi / 100.0;
      double k = 1.0 + ki * 0.25;
      auto b = amp_bounds(x, k);
      CHECK(b.lower <= b.value + 1e-12);
      CHECK(b.value <= b.upper + 1e-12);
    }
  }
}

TEST_CASE("majority amplification reaches bias 1/2") {
  // gamma = 1: k = 2, bias stays 1.
  auto f = make_xor(2);
  MajorityAmplified one = majority_amplify(RandomizedTree(xor2_tree()), Rational(1));
  CHECK(one.repetitions == 2);
  for (std::size_t i = 0; i < f.domain_size(); ++i)
    CHECK(kfold_bias(one.tree, f.input_at(i), f.value_at(i)) == 1);

  // gamma = 1/2: k = 8.
  CHECK(majority_amplify(biased_xor2(Rational(1, 2)), Rational(1, 2)).repetitions == 8);

  // gamma = 0.2: k = 50; exact expectation over product branches.
  MajorityAmplified amplified = majority_amplify(biased_xor2(Rational(1, 5)), Rational(1, 5));
  CHECK(amplified.repetitions == 50);
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    Rational b = kfold_bias(amplified.tree, f.input_at(i), f.value_at(i));
    CHECK(b >= Rational(1, 2));
  }
  CHECK_THROWS(majority_amplify(biased_xor2(Rational(1, 5)), Rational(0)));
}

TEST_CASE("worst_ratio of the perfect XOR_2 tree is 2") {
  auto f = make_xor(2);
  CHECK(worst_ratio(RandomizedTree(xor2_tree()), f) == doctest::Approx(2.0));
  // Wrong constant guess scores -inf on some input: ratio +inf.
  CHECK(std::isinf(worst_ratio(RandomizedTree(boolean_leaf(0)), f)));
}

TEST_CASE("odometer on the perfect XOR_2 tree: no errors, capped queries") {
  auto f = make_xor(2);
  RandomizedTree perfect(xor2_tree());
  double Y = worst_ratio(perfect, f);
  OdometerReport report = odometer_amplifier(perfect, f, Y, 10000, 7, 2);
  CHECK(report.worst_input_error_estimate == doctest::Approx(0.0));
  CHECK(report.worst_input_query_estimate <= static_cast<std::uint64_t>(240 * Y));
  CHECK(report.query_cap == 480);
  CHECK_THROWS(odometer_amplifier(perfect, f, Y, 100, 7, 2));   // too few trials
  CHECK_THROWS(odometer_amplifier(perfect, f, 0.0, 10000, 7));  // bad Y
}

TEST_CASE("odometer is deterministic for a fixed seed across thread counts") {
  auto f = make_xor(2);
  RandomizedTree R = bias_to_forecast(biased_xor2(Rational(1, 2)), Rational(1, 2));
  double Y = worst_ratio(R, f);
  OdometerReport a = odometer_amplifier(R, f, Y, 10000, 123, 1);
  OdometerReport b = odometer_amplifier(R, f, Y, 10000, 123, 2);
  REQUIRE(a.per_input.size() == b.per_input.size());
  for (std::size_t i = 0; i < a.per_input.size(); ++i) {
    CHECK(a.per_input[i].errors == b.per_input[i].errors);
    CHECK(a.per_input[i].max_queries == b.per_input[i].max_queries);
  }
}
