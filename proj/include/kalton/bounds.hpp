#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kalton/rational.hpp"

namespace kalton {

// One (k, n) row of the lower-bound table. best_lower certifies
// K(m) >= best_lower; the derived columns follow the chain
// K_w >= K/2 and K_s >= K_w/2 >= K/4.
struct BoundRow {
  int k = 0, n = 0, m = 0;
  Rational a_formula;
  std::optional<Rational> lp_distance;
  Rational best_lower;
  Rational kw_lower;  // best_lower / 2
  Rational ks_lower;  // best_lower / 4
  bool lp_below_formula = false;  // flagged discrepancy; signals a solver bug

  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

// One row per (k, n), sorted by m then k. With solve_lp, the exact distance
// of the 0/1/3 family is computed for every row (the separation oracle
// covers profile spaces of any size). Row solves run in parallel.
std::vector<BoundRow> bounds_table(const std::vector<std::pair<int, int>>& grid, bool solve_lp);

// "diag:a..b" (k = n), "rect:a..b,c..d", or explicit "k,n;k,n;..." pairs.
std::vector<std::pair<int, int>> parse_grid_spec(const std::string& spec);

}  // namespace kalton
