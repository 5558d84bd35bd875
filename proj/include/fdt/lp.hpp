#pragma once

#include <optional>
#include <vector>

#include "fdt/rational.hpp"

namespace fdt {

enum class Relation { le, eq, ge };
enum class Sense { minimize, maximize };

// Dense exact-rational linear program. Default variable domain is
// [0, +inf); lower may be cleared (free variable) or shifted, uppers are
// optional.
struct LinearProgram {
  Sense sense = Sense::maximize;
  std::vector<Rational> objective;

  struct Row {
    std::vector<Rational> coefficients;
    Relation relation = Relation::le;
    Rational rhs{0};
  };
  std::vector<Row> rows;

  // lower[j] = nullopt means -inf; upper[j] = nullopt means +inf.
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  explicit LinearProgram(std::size_t variables = 0, Sense sense = Sense::maximize);
  std::size_t variable_count() const { return objective.size(); }
  void add_row(std::vector<Rational> coefficients, Relation relation, Rational rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  Rational objective_value{0};
  std::vector<Rational> primal;              // per variable
  std::vector<Rational> dual;                // per row (original rows only)
  Rational dual_objective_value{0};          // equals objective_value at optimality
  std::vector<Rational> farkas_certificate;  // infeasible: row combination
  std::vector<Rational> ray;                 // unbounded: improving direction
};

// Two-phase primal simplex on the exact tableau, Bland's rule for
// anti-cycling. Desk scale only: throws beyond 5*10^4 rows / 10^3 columns.
LpResult solve(const LinearProgram& lp);

// Lower convex envelope of a (bias, cost) point cloud, restricted to
// increasing bias. evaluate(gamma) is the minimum expected cost over
// mixtures of the points whose expected bias is at least gamma;
// nullopt encodes +inf (gamma above the maximum achievable bias).
class ParetoEnvelope {
 public:
  struct Point {
    Rational bias;
    Rational cost;
    std::size_t tag = 0;  // caller payload (e.g. index of the achieving tree)
  };

  static ParetoEnvelope from_points(const std::vector<Point>& points);

  const std::vector<Point>& breakpoints() const { return breakpoints_; }
  std::optional<Rational> evaluate(const Rational& gamma) const;
  const Rational& max_bias() const { return breakpoints_.back().bias; }

 private:
  std::vector<Point> breakpoints_;
};

}  // namespace fdt
