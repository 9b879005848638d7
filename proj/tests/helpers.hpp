#pragma once

// Test-side utilities and independent oracles. Everything here recomputes
// expected values from first principles without touching the library code
// paths under test.

#include <optional>
#include <random>
#include <vector>

#include "kalton/core.hpp"
#include "kalton/rational.hpp"

namespace kalton::testing {

inline Rational random_rational(std::mt19937_64& rng, int max_num = 4, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline std::vector<Rational> random_values(std::mt19937_64& rng, std::size_t count,
                                           int max_num = 4, int max_den = 4) {
  std::vector<Rational> values(count);
  for (auto& v : values) v = random_rational(rng, max_num, max_den);
  return values;
}

// The 0/1/3 family rule evaluated straight from the definition via
// popcounts, independent of SymmetricSetFunction.
inline Rational fkn_value_by_popcount(int k, int n, Subset a) {
  bool all_touched = true, some_full = false;
  for (int j = 0; j < n; ++j) {
    Subset block = ((Subset(1) << k) - 1) << (j * k);
    int c = popcount(a & block);
    if (c == 0) all_touched = false;
    if (c == k) some_full = true;
  }
  if (a == 0) return 0;
  if (all_touched && some_full) return 3;
  return 1;
}

// Plain-loop defect scans over ordered pairs with an explicit disjointness
// test; deliberately structured differently from the library scans.
inline Rational brute_additivity_defect(const std::vector<Rational>& table) {
  Rational best;
  for (Subset a = 0; a < table.size(); ++a)
    for (Subset b = 0; b < table.size(); ++b) {
      if ((a & b) != 0) continue;
      Rational d = abs(table[a] + table[b] - table[a | b]);
      if (d > best) best = d;
    }
  return best;
}

inline Rational brute_modularity_defect(const std::vector<Rational>& table) {
  Rational best;
  for (Subset a = 0; a < table.size(); ++a)
    for (Subset b = 0; b < table.size(); ++b) {
      Rational d = abs(table[a] + table[b] - table[a | b] - table[a & b]);
      if (d > best) best = d;
    }
  return best;
}

inline Rational brute_weak_modularity_defect(const std::vector<Rational>& table) {
  Rational best;
  for (Subset a = 0; a < table.size(); ++a)
    for (Subset b = 0; b < table.size(); ++b) {
      if ((a & b) != 0) continue;
      Rational d = abs(table[a] + table[b] - table[a | b] - table[0]);
      if (d > best) best = d;
    }
  return best;
}

// Exact Gaussian elimination; returns the solution of M x = rhs when M is
// nonsingular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> m,
                                                         std::vector<Rational> rhs) {
  const std::size_t d = rhs.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m[pivot][col].is_zero()) ++pivot;
    if (pivot == d) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < d; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Rational> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

// Independent minimax oracle by vertex enumeration: the distance LP
//   min t  s.t.  t + mu(A) >= f(A), t - mu(A) >= -f(A)  for all A
// attains its optimum at a vertex where m+1 constraints with independent
// normals are tight. Enumerates every (m+1)-subset of the 2*2^m constraints,
// solves the tight system exactly and keeps the best feasible point.
// Practical for m <= 3.
inline Rational vertex_enumeration_distance(const std::vector<Rational>& table, int m) {
  const std::size_t nsets = table.size();
  const std::size_t d = m + 1;  // mu_1..mu_m, t
  struct Row {
    std::vector<Rational> normal;  // coefficients of (mu, t)
    Rational bound;                // normal . x >= bound
  };
  std::vector<Row> rows;
  for (Subset a = 0; a < nsets; ++a) {
    for (int sign : {+1, -1}) {
      Row row;
      row.normal.assign(d, Rational(0));
      for (int i = 0; i < m; ++i)
        if (a & (Subset(1) << i)) row.normal[i] = sign;
      row.normal[m] = 1;
      row.bound = sign > 0 ? table[a] : -table[a];
      rows.push_back(std::move(row));
    }
  }

  std::optional<Rational> best;
  std::vector<std::size_t> pick(d);
  auto feasible = [&](const std::vector<Rational>& x) {
    for (const Row& row : rows) {
      Rational lhs;
      for (std::size_t i = 0; i < d; ++i)
        if (!row.normal[i].is_zero()) lhs += row.normal[i] * x[i];
      if (lhs < row.bound) return false;
    }
    return true;
  };
  // iterate d-combinations of row indices
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Rational>> m_sys(d);
    std::vector<Rational> rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      m_sys[i] = rows[pick[i]].normal;
      rhs[i] = rows[pick[i]].bound;
    }
    if (auto x = solve_linear(std::move(m_sys), std::move(rhs)); x && feasible(*x))
      if (!best || (*x)[m] < *best) best = (*x)[m];

    std::size_t i = d;
    while (i-- > 0) {
      if (pick[i] + (d - i) < rows.size()) {
        ++pick[i];
        for (std::size_t j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) return *best;
    }
  }
}

// Independent optimality proof for the two-block 0/1/3 family. The upper
// bound enumerates every subset residual of the equal-weight candidate
// measure (atoms x/k with x = 4k/(3k-1)); the lower bound checks by hand the
// closed-form dual combination
//   weight p = (k-1)/(k(3k-1)) on each of the 2k sets (one block full plus a
//   point of the other), sign +,
//   weight r = (k+1)/(k(k-1)(3k-1)) on each of the k^2 co-point-pair sets,
//   sign -,
// whose total mass is 1, whose per-atom signed balance vanishes, and whose
// objective is exactly (5k-7)/(3k-1). Returns that proven distance.
inline Rational proven_fk2_distance(int k) {
  const int m = 2 * k;
  const Rational expected(5L * k - 7, 3L * k - 1);

  // Upper bound: candidate measure residuals over every subset.
  const Rational atom(4, 3 * k - 1);  // x/k = (4k/(3k-1))/k
  Rational worst;
  for (Subset a = 0; a < (Subset(1) << m); ++a) {
    Rational residual = fkn_value_by_popcount(k, 2, a) - Rational(popcount(a)) * atom;
    worst = max(worst, abs(residual));
  }
  if (worst != expected) throw std::logic_error("fk2 oracle: candidate measure residual mismatch");

  // Lower bound: the dual combination, checked exactly.
  const Rational p(static_cast<long>(k) - 1, static_cast<long>(k) * (3L * k - 1));
  const Rational r(static_cast<long>(k) + 1,
                   static_cast<long>(k) * (static_cast<long>(k) - 1) * (3L * k - 1));
  const Subset block1 = (Subset(1) << k) - 1;
  const Subset block2 = ((Subset(1) << k) - 1) << k;

  std::vector<std::pair<Subset, Rational>> entries;  // signed weights
  for (int t = 0; t < k; ++t) entries.push_back({block1 | (Subset(1) << (k + t)), p});
  for (int s = 0; s < k; ++s) entries.push_back({block2 | (Subset(1) << s), p});
  for (int s = 0; s < k; ++s)
    for (int t = 0; t < k; ++t) {
      Subset full = block1 | block2;
      entries.push_back({full & ~(Subset(1) << s) & ~(Subset(1) << (k + t)), -r});
    }

  Rational mass, objective;
  std::vector<Rational> balance(m);
  for (const auto& [set, w] : entries) {
    mass += abs(w);
    objective += w * fkn_value_by_popcount(k, 2, set);
    for (int i = 0; i < m; ++i)
      if (set & (Subset(1) << i)) balance[i] += w;
  }
  if (mass != Rational(1)) throw std::logic_error("fk2 oracle: dual mass is not 1");
  for (const Rational& bi : balance)
    if (!bi.is_zero()) throw std::logic_error("fk2 oracle: dual balance violated");
  if (objective != expected) throw std::logic_error("fk2 oracle: dual objective mismatch");

  return expected;
}

}  // namespace kalton::testing
