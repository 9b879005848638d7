#include "kalton/simplex.hpp"

#include <stdexcept>

namespace kalton {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b)
      : rows_(a.size()), cols_(a.empty() ? 0 : a[0].size()) {
    t_.assign(rows_, std::vector<Rational>(cols_ + rows_ + 1));
    flipped_.assign(rows_, false);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a[i].size() != cols_) throw std::invalid_argument("simplex: ragged matrix");
      bool flip = b[i] < Rational(0);
      flipped_[i] = flip;
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] = flip ? -a[i][j] : a[i][j];
      t_[i][cols_ + i] = 1;
      rhs(i) = flip ? -b[i] : b[i];
      basis_[i] = cols_ + i;
    }
  }

  std::size_t original_cols() const { return cols_; }
  std::size_t total_cols() const { return cols_ + rows_; }
  Rational& rhs(std::size_t i) { return t_[i][cols_ + rows_]; }
  const Rational& rhs(std::size_t i) const { return t_[i][cols_ + rows_]; }
  bool flipped(std::size_t i) const { return flipped_[i]; }
  std::size_t basis(std::size_t i) const { return basis_[i]; }

  // obj[j] = z_j - c_j for the given cost on original columns (artificials
  // cost 0 except in phase 1); obj value returned separately.
  void rebuild_objective(const std::vector<Rational>& cost, bool phase_one) {
    obj_.assign(total_cols() + 1, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational cb = basic_cost(cost, phase_one, basis_[i]);
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= total_cols(); ++j) {
        if (!t_[i][j].is_zero()) obj_[j] += cb * t_[i][j];
      }
    }
    for (std::size_t j = 0; j < total_cols(); ++j) obj_[j] -= column_cost(cost, phase_one, j);
  }

  // Runs Bland-rule pivots until optimal for the maintained objective.
  // Entering columns restricted to the original block in phase 2.
  LpStatus iterate(bool phase_one) {
    const std::size_t limit = phase_one ? total_cols() : original_cols();
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj_[j] < Rational(0)) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return LpStatus::Optimal;

      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!(t_[i][enter] > Rational(0))) continue;
        Rational ratio = rhs(i) / t_[i][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t jcol) {
    const Rational inv = Rational(1) / t_[r][jcol];
    if (!(inv == Rational(1)))
      for (std::size_t j = 0; j <= total_cols(); ++j)
        if (!t_[r][j].is_zero()) t_[r][j] *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_[i][jcol].is_zero()) continue;
      const Rational factor = t_[i][jcol];
      for (std::size_t j = 0; j <= total_cols(); ++j)
        if (!t_[r][j].is_zero()) t_[i][j] -= factor * t_[r][j];
    }
    if (!obj_[jcol].is_zero()) {
      const Rational factor = obj_[jcol];
      for (std::size_t j = 0; j <= total_cols(); ++j)
        if (!t_[r][j].is_zero()) obj_[j] -= factor * t_[r][j];
    }
    basis_[r] = jcol;
  }

  // After a feasible phase 1, pivot basic artificials onto original columns
  // where possible; rows left with a basic artificial are redundant (zero
  // across all original columns) and stay inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < original_cols()) continue;
      for (std::size_t j = 0; j < original_cols(); ++j) {
        if (!t_[i][j].is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Rational objective_value(const std::vector<Rational>& cost, bool phase_one) const {
    Rational v;
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational cb = basic_cost(cost, phase_one, basis_[i]);
      if (!cb.is_zero()) v += cb * rhs(i);
    }
    return v;
  }

  const Rational& objective_entry(std::size_t j) const { return obj_[j]; }

 private:
  static Rational basic_cost(const std::vector<Rational>& cost, bool phase_one, std::size_t j) {
    if (j < cost.size()) return phase_one ? Rational(0) : cost[j];
    return phase_one ? Rational(-1) : Rational(0);
  }
  Rational column_cost(const std::vector<Rational>& cost, bool phase_one, std::size_t j) const {
    return basic_cost(cost, phase_one, j);
  }

  std::size_t rows_, cols_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> flipped_;
};

}  // namespace

LpSolution simplex_solve(const std::vector<std::vector<Rational>>& a,
                         const std::vector<Rational>& b,
                         const std::vector<Rational>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("simplex: |A| != |b|");
  const std::size_t rows = a.size();
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  if (c.size() != cols) throw std::invalid_argument("simplex: |c| != columns");

  Tableau t(a, b);

  t.rebuild_objective(c, /*phase_one=*/true);
  LpStatus s1 = t.iterate(/*phase_one=*/true);
  if (s1 != LpStatus::Optimal) throw std::logic_error("simplex: phase 1 cannot be unbounded");
  if (!t.objective_value(c, /*phase_one=*/true).is_zero()) return {LpStatus::Infeasible, {}, {}, {}};
  t.drive_out_artificials();

  t.rebuild_objective(c, /*phase_one=*/false);
  LpStatus s2 = t.iterate(/*phase_one=*/false);
  if (s2 == LpStatus::Unbounded) return {LpStatus::Unbounded, {}, {}, {}};

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.objective = t.objective_value(c, /*phase_one=*/false);
  sol.x.assign(cols, Rational(0));
  for (std::size_t i = 0; i < rows; ++i)
    if (t.basis(i) < cols) sol.x[t.basis(i)] = t.rhs(i);
  sol.y.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Rational yi = t.objective_entry(cols + i);
    sol.y[i] = t.flipped(i) ? -yi : yi;
  }
  return sol;
}

}  // namespace kalton
