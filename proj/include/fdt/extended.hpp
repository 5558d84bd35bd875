#pragma once

#include <cmath>
#include <limits>

#include "fdt/rational.hpp"

namespace fdt {

// Extended-real scalar on [-inf, +inf]. IEEE doubles already carry the
// infinities; this wrapper pins down the two conventions the rest of the
// library relies on:
//   * ratios: r/0 = +inf for r in [0, +inf]  (so 0/0 = +inf),
//   * expectations: 0 * (+-inf) = 0, i.e. branches with probability zero
//     never contribute, even when their value is infinite.
struct ExtendedReal {
  double value = 0.0;

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }
  static constexpr ExtendedReal neg_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(value); }
  bool is_pos_inf() const { return std::isinf(value) && value > 0; }
  bool is_neg_inf() const { return std::isinf(value) && value < 0; }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.value == b.value; }
  friend auto operator<=>(ExtendedReal a, ExtendedReal b) { return a.value <=> b.value; }
};

// cost/score ratio with the r/0 = +inf convention (score already clamped
// to score^+ by the caller passing max(score, 0)).
inline double ratio_pos(double cost, double score_plus) {
  if (score_plus <= 0.0) return std::numeric_limits<double>::infinity();
  return cost / score_plus;
}

// One term of an expectation: probability * value with 0 * inf = 0.
inline double expectation_term(double probability, double value) {
  if (probability == 0.0) return 0.0;
  return probability * value;
}

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace fdt
