#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdt/scoring.hpp"

using namespace fdt;

TEST_CASE("rule values at the pinned points") {
  // s(1) = 1 and s(1/2) = 0 for every rule.
  for (auto rule : {ScoringRule::hs, ScoringRule::brier, ScoringRule::bias, ScoringRule::ls}) {
    CHECK(eval_rule(rule, 1.0).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_rule(rule, 0.5).value == doctest::Approx(0.0).epsilon(1e-15));
  }
  CHECK(eval_rule(ScoringRule::hs, 0.2).value == doctest::Approx(-1.0));  // 1 - sqrt(4)
  CHECK(eval_rule(ScoringRule::brier, 0.75).value == doctest::Approx(0.75));
  CHECK(eval_rule(ScoringRule::ls, 0.25).value == doctest::Approx(-1.0));
  CHECK(eval_rule(ScoringRule::hs, 0.0).is_neg_inf());
  CHECK(eval_rule(ScoringRule::ls, 0.0).is_neg_inf());
  CHECK(eval_rule(ScoringRule::bias, 0.0).value == doctest::Approx(-1.0));
  CHECK_THROWS(eval_rule(ScoringRule::hs, -0.1));
  CHECK_THROWS(eval_rule(ScoringRule::hs, 1.1));
}

TEST_CASE("eval_outcome uses s_1(q) = s(q), s_0(q) = s(1-q)") {
  CHECK(eval_outcome(ScoringRule::hs, 0.8, 1).value == doctest::Approx(0.5));
  CHECK(eval_outcome(ScoringRule::hs, 0.8, 0).value == doctest::Approx(-1.0));
  for (double q : {0.0, 0.3, 0.5, 0.77, 1.0}) {
    CHECK(eval_outcome(ScoringRule::bias, q, 1).value ==
          doctest::Approx(-eval_outcome(ScoringRule::bias, q, 0).value));
    CHECK(eval_outcome(ScoringRule::hs, q, 1).value == eval_rule(ScoringRule::hs, q).value);
  }
}

TEST_CASE("proper rules maximize at q = p, bias does not") {
  CHECK(check_proper(ScoringRule::brier, 0.3, 10000));
  CHECK(check_proper(ScoringRule::hs, 0.5, 10000));
  CHECK(check_proper(ScoringRule::hs, 0.3, 10000));
  CHECK(check_proper(ScoringRule::ls, 0.7, 10000));
  // bias: linear objective, argmax at an endpoint (q = 1 for p = 0.7).
  CHECK(check_proper(ScoringRule::bias, 0.7, 10000));
  CHECK(check_proper(ScoringRule::bias, 0.2, 10000));
  CHECK(check_proper(ScoringRule::bias, 0.5, 10000));
  CHECK_THROWS(check_proper(ScoringRule::hs, 0.5, 10));
}

TEST_CASE("hs(q) <= bias(q) with equality only at 1/2 and 1") {
  const int steps = 100000;
  for (int i = 0; i <= steps; ++i) {
    double q = static_cast<double>(i) / steps;
    double hs = eval_rule(ScoringRule::hs, q).value;
    double bias = eval_rule(ScoringRule::bias, q).value;
    CHECK(hs <= bias + 1e-12);
    if (std::abs(q - 0.5) > 1e-3 && std::abs(q - 1.0) > 1e-3 && q > 0.0)
      CHECK(hs < bias - 1e-9);
  }
}

TEST_CASE("rules are nondecreasing on a grid") {
  const int steps = 10000;
  for (auto rule : {ScoringRule::hs, ScoringRule::brier, ScoringRule::bias, ScoringRule::ls}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
      double v = eval_rule(rule, static_cast<double>(i) / steps).value;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("rule names round trip") {
  for (auto rule : {ScoringRule::hs, ScoringRule::brier, ScoringRule::bias, ScoringRule::ls})
    CHECK(scoring_rule_from_name(scoring_rule_name(rule)) == rule);
  CHECK_THROWS(scoring_rule_from_name("nope"));
}
