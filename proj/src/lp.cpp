#include "fdt/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdt {

LinearProgram::LinearProgram(std::size_t variables, Sense sense_in) {
  sense = sense_in;
  objective.assign(variables, Rational(0));
  lower.assign(variables, Rational(0));
  upper.assign(variables, std::nullopt);
}

void LinearProgram::add_row(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() != variable_count())
    throw std::invalid_argument("LinearProgram: row width != variable count");
  rows.push_back(Row{std::move(coefficients), relation, std::move(rhs)});
}

namespace {

// Standard-form problem: min c.x  s.t.  A x = b, x >= 0, b >= 0, built by
// shifting finite lower bounds, splitting free variables, turning finite
// upper bounds into extra rows, and appending slack/surplus columns.
struct Standard {
  std::size_t m = 0;          // rows
  std::size_t n = 0;          // structural + slack columns
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> c;
  std::vector<int> row_sign;  // +1, or -1 when the row was negated for b >= 0

  // user variable j -> (positive column, optional negative column, shift)
  struct VarMap {
    std::size_t col_pos = 0;
    std::optional<std::size_t> col_neg;
    Rational shift{0};
  };
  std::vector<VarMap> var_map;
  Rational objective_shift{0};  // sum c_j * shift_j
  std::size_t user_rows = 0;
  bool negated_sense = false;  // true when a max problem was negated
};

Standard standardize(const LinearProgram& lp) {
  const std::size_t user_vars = lp.variable_count();
  if (lp.lower.size() != user_vars || lp.upper.size() != user_vars)
    throw std::invalid_argument("LinearProgram: bounds size mismatch");
  for (const auto& row : lp.rows)
    if (row.coefficients.size() != user_vars)
      throw std::invalid_argument("LinearProgram: row width != variable count");
  if (lp.rows.size() > 50000 || user_vars > 1000)
    throw std::invalid_argument("LinearProgram: instance exceeds desk-scale limits");

  Standard std_form;
  std_form.negated_sense = lp.sense == Sense::maximize;
  std::vector<Rational> c_user = lp.objective;
  if (std_form.negated_sense)
    for (Rational& v : c_user) v = -v;

  // Assign columns.
  std_form.var_map.resize(user_vars);
  std::size_t next_col = 0;
  for (std::size_t j = 0; j < user_vars; ++j) {
    auto& vm = std_form.var_map[j];
    if (lp.lower[j].has_value()) {
      vm.shift = *lp.lower[j];
      vm.col_pos = next_col++;
    } else {
      vm.col_pos = next_col++;
      vm.col_neg = next_col++;
    }
  }
  const std::size_t structural = next_col;

  // Gather rows: user rows first, then upper-bound rows.
  struct PreRow {
    std::vector<Rational> coeffs;  // structural width
    Relation relation;
    Rational rhs;
  };
  std::vector<PreRow> pre;
  auto expand_row = [&](const std::vector<Rational>& user_coeffs, Relation rel, Rational rhs) {
    PreRow row;
    row.coeffs.assign(structural, Rational(0));
    row.relation = rel;
    row.rhs = std::move(rhs);
    for (std::size_t j = 0; j < user_vars; ++j) {
      const Rational& a = user_coeffs[j];
      if (a == 0) continue;
      const auto& vm = std_form.var_map[j];
      row.coeffs[vm.col_pos] += a;
      if (vm.col_neg) row.coeffs[*vm.col_neg] -= a;
      row.rhs -= a * vm.shift;
    }
    pre.push_back(std::move(row));
  };

  for (const auto& row : lp.rows) expand_row(row.coefficients, row.relation, row.rhs);
  std_form.user_rows = pre.size();
  for (std::size_t j = 0; j < user_vars; ++j) {
    if (!lp.upper[j].has_value()) continue;
    std::vector<Rational> unit(user_vars, Rational(0));
    unit[j] = 1;
    expand_row(unit, Relation::le, *lp.upper[j]);
  }

  // Slack / surplus columns, one per inequality row.
  std_form.m = pre.size();
  std::size_t slack_count = 0;
  for (const auto& row : pre)
    if (row.relation != Relation::eq) ++slack_count;
  std_form.n = structural + slack_count;

  std_form.A.assign(std_form.m, std::vector<Rational>(std_form.n, Rational(0)));
  std_form.b.assign(std_form.m, Rational(0));
  std_form.c.assign(std_form.n, Rational(0));
  std_form.row_sign.assign(std_form.m, 1);

  for (std::size_t j = 0; j < user_vars; ++j) {
    const auto& vm = std_form.var_map[j];
    std_form.c[vm.col_pos] += c_user[j];
    if (vm.col_neg) std_form.c[*vm.col_neg] -= c_user[j];
    std_form.objective_shift += c_user[j] * vm.shift;
  }

  std::size_t slack_col = structural;
  for (std::size_t i = 0; i < std_form.m; ++i) {
    for (std::size_t j = 0; j < structural; ++j) std_form.A[i][j] = pre[i].coeffs[j];
    std_form.b[i] = pre[i].rhs;
    if (pre[i].relation == Relation::le)
      std_form.A[i][slack_col++] = 1;
    else if (pre[i].relation == Relation::ge)
      std_form.A[i][slack_col++] = -1;
    if (std_form.b[i] < 0) {
      for (std::size_t j = 0; j < std_form.n; ++j) std_form.A[i][j] = -std_form.A[i][j];
      std_form.b[i] = -std_form.b[i];
      std_form.row_sign[i] = -1;
    }
  }
  return std_form;
}

// Full-tableau two-phase simplex. Columns: [structural+slack | artificial];
// the artificial block starts as the identity, so at any time it holds
// B^{-1} and the cost-row entries under it hold -y.
class Tableau {
 public:
  explicit Tableau(const Standard& sf)
      : sf_(sf), m_(sf.m), n_(sf.n), width_(sf.n + sf.m + 1) {
    rows_.assign(m_, std::vector<Rational>(width_, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = sf.A[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i][width_ - 1] = sf.b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;

    // Phase-1 reduced costs for cost vector (0,...,0 | 1,...,1).
    cost1_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < m_; ++i) cost1_[j] -= rows_[i][j];
    for (std::size_t i = 0; i < m_; ++i) cost1_[width_ - 1] -= rows_[i][width_ - 1];

    // Phase-2 reduced costs; artificials cost 0, initial basis artificial.
    cost2_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost2_[j] = sf.c[j];
  }

  // Runs phase 1 and phase 2. Returns the status.
  LpStatus run() {
    pivot_loop(cost1_, /*allow_artificial=*/true);
    if (-cost1_[width_ - 1] > 0) return LpStatus::infeasible;
    drive_out_artificials();
    return pivot_loop(cost2_, /*allow_artificial=*/false);
  }

  Rational phase1_value() const { return -cost1_[width_ - 1]; }
  Rational objective_value() const { return -cost2_[width_ - 1]; }

  std::vector<Rational> primal_standard() const {
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][width_ - 1];
    return x;
  }

  // y_i = -reduced cost of artificial column i (for the given cost row).
  std::vector<Rational> duals(const std::vector<Rational>& cost_row) const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = -cost_row[n_ + i];
    return y;
  }
  const std::vector<Rational>& phase1_costs() const { return cost1_; }
  const std::vector<Rational>& phase2_costs() const { return cost2_; }

  // Improving ray for the last (unbounded) entering column.
  std::vector<Rational> ray_standard() const {
    std::vector<Rational> d(n_, Rational(0));
    d[unbounded_col_] = 1;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) d[basis_[i]] = -rows_[i][unbounded_col_];
    return d;
  }

 private:
  LpStatus pivot_loop(std::vector<Rational>& cost, bool allow_artificial) {
    while (true) {
      std::size_t entering = width_;
      std::size_t limit = allow_artificial ? width_ - 1 : n_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (!allow_artificial && j >= n_) break;
        if (cost[j] < 0 && !banned(j, allow_artificial)) {
          entering = j;
          break;  // Bland: smallest index
        }
      }
      if (entering == width_) return LpStatus::optimal;

      std::size_t leaving = m_;
      Rational best_ratio(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][entering] <= 0) continue;
        Rational ratio = rows_[i][width_ - 1] / rows_[i][entering];
        if (leaving == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == m_) {
        unbounded_col_ = entering;
        return LpStatus::unbounded;
      }
      pivot(leaving, entering);
    }
  }

  bool banned(std::size_t column, bool allow_artificial) const {
    return !allow_artificial && column >= n_;
  }

  void pivot(std::size_t row, std::size_t column) {
    Rational inv = rows_[row][column];
    for (Rational& v : rows_[row]) v /= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || rows_[i][column] == 0) continue;
      Rational factor = rows_[i][column];
      for (std::size_t j = 0; j < width_; ++j) rows_[i][j] -= factor * rows_[row][j];
    }
    for (auto* cost : {&cost1_, &cost2_}) {
      Rational factor = (*cost)[column];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) (*cost)[j] -= factor * rows_[row][j];
    }
    basis_[row] = column;
  }

  // After phase 1, swap basic artificials for structural columns where
  // possible; rows that cannot be swapped are redundant and keep a zero
  // artificial in the basis.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (rows_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  const Standard& sf_;
  std::size_t m_, n_, width_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> cost1_, cost2_;
  std::vector<std::size_t> basis_;
  std::size_t unbounded_col_ = 0;
};

std::vector<Rational> map_to_user(const Standard& sf, const std::vector<Rational>& x_std,
                                  bool apply_shift) {
  std::vector<Rational> x(sf.var_map.size(), Rational(0));
  for (std::size_t j = 0; j < sf.var_map.size(); ++j) {
    const auto& vm = sf.var_map[j];
    x[j] = x_std[vm.col_pos];
    if (vm.col_neg) x[j] -= x_std[*vm.col_neg];
    if (apply_shift) x[j] += vm.shift;
  }
  return x;
}

std::vector<Rational> user_row_multipliers(const Standard& sf, const std::vector<Rational>& y_std) {
  std::vector<Rational> y(sf.user_rows);
  for (std::size_t i = 0; i < sf.user_rows; ++i) y[i] = sf.row_sign[i] * y_std[i];
  return y;
}

}  // namespace

LpResult solve(const LinearProgram& lp) {
  Standard sf = standardize(lp);
  Tableau tableau(sf);
  LpResult result;
  result.status = tableau.run();

  switch (result.status) {
    case LpStatus::infeasible: {
      // Sense-free Farkas combination of the user rows.
      std::vector<Rational> y = tableau.duals(tableau.phase1_costs());
      result.farkas_certificate = user_row_multipliers(sf, y);
      return result;
    }
    case LpStatus::unbounded: {
      std::vector<Rational> d = tableau.ray_standard();
      result.ray = map_to_user(sf, d, /*apply_shift=*/false);
      return result;
    }
    case LpStatus::optimal:
      break;
  }

  std::vector<Rational> x_std = tableau.primal_standard();
  result.primal = map_to_user(sf, x_std, /*apply_shift=*/true);

  Rational value_min = tableau.objective_value() + sf.objective_shift;
  result.objective_value = sf.negated_sense ? Rational(-value_min) : value_min;

  std::vector<Rational> y_std = tableau.duals(tableau.phase2_costs());
  Rational dual_min = sf.objective_shift;
  for (std::size_t i = 0; i < sf.m; ++i) dual_min += y_std[i] * sf.b[i];
  result.dual_objective_value = sf.negated_sense ? Rational(-dual_min) : dual_min;

  std::vector<Rational> y_user = user_row_multipliers(sf, y_std);
  if (sf.negated_sense)
    for (Rational& v : y_user) v = -v;
  result.dual = std::move(y_user);
  return result;
}

ParetoEnvelope ParetoEnvelope::from_points(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("ParetoEnvelope: empty point set");

  // Anchor: globally cheapest point, highest bias among ties.
  Point anchor = points.front();
  for (const Point& p : points)
    if (p.cost < anchor.cost || (p.cost == anchor.cost && p.bias > anchor.bias)) anchor = p;

  std::vector<Point> candidates;
  candidates.push_back(anchor);
  for (const Point& p : points)
    if (p.bias > anchor.bias) candidates.push_back(p);
  std::sort(candidates.begin(), candidates.end(), [](const Point& a, const Point& b) {
    if (a.bias != b.bias) return a.bias < b.bias;
    return a.cost < b.cost;
  });
  // Per bias value keep only the cheapest point.
  std::vector<Point> filtered;
  for (const Point& p : candidates) {
    if (!filtered.empty() && filtered.back().bias == p.bias) continue;
    filtered.push_back(p);
  }

  // Andrew monotone chain, lower hull in the (bias, cost) plane.
  std::vector<Point> hull;
  auto turns_right_or_straight = [](const Point& a, const Point& b, const Point& c) {
    Rational cross = (b.bias - a.bias) * (c.cost - a.cost) - (b.cost - a.cost) * (c.bias - a.bias);
    return cross <= 0;
  };
  for (const Point& p : filtered) {
    while (hull.size() >= 2 && turns_right_or_straight(hull[hull.size() - 2], hull.back(), p))
      hull.pop_back();
    hull.push_back(p);
  }

  ParetoEnvelope envelope;
  envelope.breakpoints_ = std::move(hull);
  return envelope;
}

std::optional<Rational> ParetoEnvelope::evaluate(const Rational& gamma) const {
  const auto& pts = breakpoints_;
  if (gamma <= pts.front().bias) return pts.front().cost;
  if (gamma > pts.back().bias) return std::nullopt;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (gamma <= pts[i].bias) {
      const Point& a = pts[i - 1];
      const Point& b = pts[i];
      Rational t = (gamma - a.bias) / (b.bias - a.bias);
      return a.cost + t * (b.cost - a.cost);
    }
  }
  return pts.back().cost;
}

}  // namespace fdt
