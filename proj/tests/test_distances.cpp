#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "fdt/distances.hpp"
#include "support/oracles.hpp"

using namespace fdt;

namespace {

FinitePair two_point(double a0, double b0, double a1, double b1, double w = 0.5) {
  return FinitePair{{"a", "b"}, {a0, b0}, {a1, b1}, w};
}

}  // namespace

TEST_CASE("identical distributions have distance 0") {
  auto pair = two_point(0.3, 0.7, 0.3, 0.7, 0.4);
  for (auto m : {DistanceMeasure::tv, DistanceMeasure::h2, DistanceMeasure::chi2s,
                 DistanceMeasure::js})
    CHECK(distance(pair, m) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("disjoint supports give distance 1 at w = 1/2") {
  auto pair = two_point(1, 0, 0, 1);
  for (auto m : {DistanceMeasure::tv, DistanceMeasure::h2, DistanceMeasure::chi2s,
                 DistanceMeasure::js})
    CHECK(distance(pair, m) == doctest::Approx(1.0));
}

TEST_CASE("h2((1,0),(1/2,1/2)) = 1 - sqrt(2)/2") {
  auto pair = two_point(1, 0, 0.5, 0.5);
  CHECK(distance(pair, DistanceMeasure::h2) == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0));
}

TEST_CASE("optimal forecast is the posterior") {
  auto equal = two_point(0.3, 0.7, 0.3, 0.7);
  for (double phi : optimal_forecast(equal, ScoringRule::hs)) CHECK(phi == doctest::Approx(0.5));

  auto disjoint = two_point(1, 0, 0, 1);
  auto phi = optimal_forecast(disjoint, ScoringRule::hs);
  CHECK(phi[0] == doctest::Approx(0.0));
  CHECK(phi[1] == doctest::Approx(1.0));

  FinitePair one_point{{"a"}, {1}, {1}, 1.0 / 3.0};
  CHECK(optimal_forecast(one_point, ScoringRule::hs)[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("max_score matches the paired distance measure") {
  auto disjoint = two_point(1, 0, 0, 1);
  CHECK(max_score(disjoint, ScoringRule::hs) == doctest::Approx(1.0));
  auto equal = two_point(0.4, 0.6, 0.4, 0.6, 0.3);
  CHECK(max_score(equal, ScoringRule::brier) == doctest::Approx(0.0).epsilon(1e-14));

  SplitMix64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    FinitePair pair = testing::random_pair(rng, 6);
    for (auto rule : {ScoringRule::hs, ScoringRule::brier, ScoringRule::bias, ScoringRule::ls}) {
      double ms = max_score(pair, rule);
      double d = distance(pair, matching_measure(rule));
      CHECK(std::abs(ms - d) <= 1e-9);
    }
  }
}

TEST_CASE("max_score matches a per-point grid search") {
  SplitMix64 rng(7);
  for (int i = 0; i < 25; ++i) {
    FinitePair pair = testing::random_pair(rng, 4);
    double ms = max_score(pair, ScoringRule::hs);
    double oracle = testing::grid_max_score(pair, ScoringRule::hs, 10000);
    CHECK(std::abs(ms - oracle) <= 1e-6);
    CHECK(oracle <= ms + 1e-12);  // randomization/grids never beat the posterior
  }
}

TEST_CASE("distance inequality chain on random pairs") {
  SplitMix64 rng(99);
  const double slack = 1e-12;
  for (int i = 0; i < 1000; ++i) {
    FinitePair pair = testing::random_pair(rng, 6);
    double tv = distance(pair, DistanceMeasure::tv);
    double h2 = distance(pair, DistanceMeasure::h2);
    double chi = distance(pair, DistanceMeasure::chi2s);
    double js = distance(pair, DistanceMeasure::js);
    CHECK(chi / 2.0 <= 1.0 - std::sqrt(1.0 - chi) + slack);
    CHECK(1.0 - std::sqrt(1.0 - chi) <= h2 + slack);
    CHECK(h2 <= js + slack);
    CHECK(js <= chi + slack);
    CHECK(tv * tv <= chi + slack);
    CHECK(chi <= tv + slack);
    CHECK(js <= h2 / std::log(2.0) + slack);
    CHECK(chi <= std::log(4.0) * js + slack);
  }
}

TEST_CASE("h2_disjoint_mixture is the weighted sum of component h2") {
  auto p1 = two_point(1, 0, 0, 1);
  CHECK(h2_disjoint_mixture({{1.0, p1}}) == doctest::Approx(distance(p1, DistanceMeasure::h2)));

  FinitePair p2{{"c", "d"}, {0.5, 0.5}, {0.1, 0.9}, 0.5};
  double a = distance(p1, DistanceMeasure::h2);
  double b = distance(p2, DistanceMeasure::h2);
  CHECK(h2_disjoint_mixture({{0.5, p1}, {0.5, p2}}) == doctest::Approx((a + b) / 2.0));

  // Overlapping supports are rejected.
  FinitePair clash{{"a", "x"}, {1, 0}, {0, 1}, 0.5};
  CHECK_THROWS(h2_disjoint_mixture({{0.5, p1}, {0.5, clash}}));
}

TEST_CASE("h2_disjoint_mixture matches the assembled mixture") {
  SplitMix64 rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<double, FinitePair>> parts;
    FinitePair assembled;
    assembled.w = 0.5;
    double wsum = 0.0;
    std::vector<double> weights;
    for (int j = 0; j < 3; ++j) {
      weights.push_back(rng.next_double() + 0.1);
      wsum += weights.back();
    }
    for (int j = 0; j < 3; ++j) {
      FinitePair part = testing::random_pair(rng, 3);
      part.w = 0.5;
      for (auto& label : part.support) label = "g" + std::to_string(j) + label;
      double weight = weights[static_cast<std::size_t>(j)] / wsum;
      parts.emplace_back(weight, part);
      for (std::size_t i = 0; i < part.size(); ++i) {
        assembled.support.push_back(part.support[i]);
        assembled.nu0.push_back(weight * part.nu0[i]);
        assembled.nu1.push_back(weight * part.nu1[i]);
      }
    }
    double direct = distance(assembled, DistanceMeasure::h2);
    CHECK(h2_disjoint_mixture(parts) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("pair JSON round trip") {
  auto pair = two_point(0.25, 0.75, 0.5, 0.5, 0.3);
  auto back = pair_from_json(pair_to_json(pair));
  CHECK(back.nu0 == pair.nu0);
  CHECK(back.nu1 == pair.nu1);
  CHECK(back.w == pair.w);
}
