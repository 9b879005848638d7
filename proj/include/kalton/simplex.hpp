#pragma once

#include <vector>

#include "kalton/rational.hpp"

namespace kalton {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Rational objective;
  std::vector<Rational> x;  // primal solution, size N
  std::vector<Rational> y;  // row multipliers y = c_B B^{-1}, size M
};

// Maximize c.x subject to A x = b, x >= 0, in exact rational arithmetic.
// Two-phase tableau simplex with Bland's pivot rule (terminating and
// deterministic). Redundant rows are tolerated; their multipliers are
// whatever the final basis induces. At optimality the multipliers price
// every column: c_j <= y . A_j for all j.
LpSolution simplex_solve(const std::vector<std::vector<Rational>>& a,
                         const std::vector<Rational>& b,
                         const std::vector<Rational>& c);

}  // namespace kalton
