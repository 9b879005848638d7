#include "kalton/chebyshev.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kalton/simplex.hpp"

namespace kalton {

std::string key_str(const ConstraintKey& key) {
  if (std::holds_alternative<Subset>(key)) {
    std::ostringstream os;
    os << std::hex << std::get<Subset>(key);
    return os.str();
  }
  return std::get<Profile>(key).str();
}

namespace {

// Epigraph LP in dual standard form. One balance row per variable of the
// measure (atom or block), one normalization row, and two columns per
// constraint key:
//   maximize  sum_A f(A) (l+_A - l-_A)
//   s.t.      sum_A (l+_A - l-_A) coeff_v(A) = 0   for every variable v
//             sum_A (l+_A + l-_A)            = 1
//             l >= 0
// The simplex multipliers of the balance rows are the optimal measure and
// the normalization multiplier equals the optimum.
struct EpigraphSolve {
  Rational optimum;
  std::vector<Rational> weights;  // per measure variable
  std::vector<DualEntry> duals;
};

template <typename KeyT>
EpigraphSolve solve_epigraph(int vars, const std::vector<KeyT>& keys,
                             const std::function<Rational(const KeyT&)>& value_of,
                             const std::function<std::vector<Rational>(const KeyT&)>& coeffs_of) {
  const std::size_t ncols = 2 * keys.size();
  std::vector<std::vector<Rational>> a(vars + 1, std::vector<Rational>(ncols));
  std::vector<Rational> c(ncols);
  for (std::size_t t = 0; t < keys.size(); ++t) {
    const std::vector<Rational> coef = coeffs_of(keys[t]);
    const Rational fv = value_of(keys[t]);
    for (int v = 0; v < vars; ++v) {
      a[v][2 * t] = coef[v];
      a[v][2 * t + 1] = -coef[v];
    }
    a[vars][2 * t] = 1;
    a[vars][2 * t + 1] = 1;
    c[2 * t] = fv;
    c[2 * t + 1] = -fv;
  }
  std::vector<Rational> b(vars + 1);
  b[vars] = 1;

  LpSolution sol = simplex_solve(a, b, c);
  if (sol.status != LpStatus::Optimal)
    throw SolverError("epigraph LP did not solve to optimality");

  EpigraphSolve out;
  out.optimum = sol.objective;
  out.weights.assign(sol.y.begin(), sol.y.begin() + vars);
  if (sol.y[vars] != sol.objective)
    throw SolverError("epigraph LP: normalization multiplier disagrees with the optimum");
  for (std::size_t t = 0; t < keys.size(); ++t) {
    if (sol.x[2 * t] > Rational(0)) out.duals.push_back({ConstraintKey(keys[t]), +1, sol.x[2 * t]});
    if (sol.x[2 * t + 1] > Rational(0)) out.duals.push_back({ConstraintKey(keys[t]), -1, sol.x[2 * t + 1]});
  }
  return out;
}

std::vector<Rational> subset_coeffs(Subset a, int m) {
  std::vector<Rational> coef(m);
  for (int i = 0; i < m; ++i)
    if (a & (Subset(1) << i)) coef[i] = 1;
  return coef;
}

std::vector<Rational> profile_coeffs(const Profile& p) {
  std::vector<Rational> coef(p.size());
  for (int j = 0; j < p.size(); ++j) coef[j] = p.counts[j];
  return coef;
}

// Most violated subset under the residual |f(A) - mu(A)|, lexicographically
// least among maximizers; nullopt when no residual exceeds t.
std::optional<Subset> dense_separation(const SetFunction& f, const Measure& mu, const Rational& t) {
  std::optional<Subset> best;
  Rational best_violation = t;
  for (Subset a = 0; a < f.table_size(); ++a) {
    Rational r = abs(f.value(a) - mu(a));
    if (r > best_violation) {
      best_violation = r;
      best = a;
    }
  }
  return best;
}

std::vector<Subset> dense_seed(const SetFunction& f, const SolveOptions& opts) {
  std::set<Subset> seed{0};
  if (opts.initial_constraints == SolveOptions::Seed::Default) {
    seed.insert(f.ground().full_mask());
    for (int i = 0; i < f.m(); ++i) seed.insert(Subset(1) << i);
    if (opts.seed_blocks && opts.seed_blocks->ground_size() == f.m())
      for (int j = 0; j < opts.seed_blocks->block_count(); ++j)
        seed.insert(opts.seed_blocks->block_mask(j));
  }
  return {seed.begin(), seed.end()};
}

std::vector<Profile> symmetric_seed(const SymmetricSetFunction& sf, const SolveOptions& opts) {
  const BlockStructure& blocks = sf.blocks();
  const int n = blocks.block_count();
  std::set<Profile> seed;
  seed.insert(Profile(std::vector<int>(n, 0)));
  if (opts.initial_constraints == SolveOptions::Seed::Default) {
    seed.insert(Profile(blocks.sizes));
    for (int j = 0; j < n; ++j) {
      std::vector<int> unit(n, 0);
      unit[j] = 1;
      seed.insert(Profile(unit));
      std::vector<int> spike(n, 1);
      spike[j] = blocks.sizes[j];
      seed.insert(Profile(spike));
    }
  }
  return {seed.begin(), seed.end()};
}

Measure block_constant_measure(const BlockStructure& blocks, const std::vector<Rational>& per_atom) {
  std::vector<Rational> atoms;
  atoms.reserve(blocks.ground_size());
  for (int j = 0; j < blocks.block_count(); ++j)
    for (int i = 0; i < blocks.sizes[j]; ++i) atoms.push_back(per_atom[j]);
  return Measure(GroundSet(blocks.ground_size()), std::move(atoms));
}

Rational profile_residual(const SymmetricSetFunction& sf, const std::vector<Rational>& y,
                          const Profile& p) {
  Rational dot;
  for (int j = 0; j < p.size(); ++j)
    if (p.counts[j] != 0) dot += Rational(p.counts[j]) * y[j];
  return sf.value(p) - dot;
}

// Exhaustive profile-space separation (budget permitting).
std::optional<Profile> profile_scan_separation(const SymmetricSetFunction& sf,
                                               const std::vector<Rational>& y, const Rational& t) {
  std::optional<Profile> best;
  Rational best_violation = t;
  Profile p(std::vector<int>(sf.blocks().block_count(), 0));
  do {
    Rational r = abs(profile_residual(sf, y, p));
    if (r > best_violation) {
      best_violation = r;
      best = p;
    }
  } while (next_profile(sf.blocks(), p));
  return best;
}

}  // namespace

DistanceCertificate chebyshev_distance(const SetFunction& f, const SolveOptions& opts) {
  if (opts.iteration_cap < 1) throw std::invalid_argument("SolveOptions: iteration_cap must be >= 1");
  const int m = f.m();

  std::vector<Subset> keys;
  if (opts.strategy == SolveOptions::Strategy::Dense) {
    keys.resize(f.table_size());
    for (Subset a = 0; a < f.table_size(); ++a) keys[a] = a;
  } else {
    keys = dense_seed(f, opts);
  }

  auto value_of = std::function<Rational(const Subset&)>([&f](const Subset& a) { return f.value(a); });
  auto coeffs_of =
      std::function<std::vector<Rational>(const Subset&)>([m](const Subset& a) { return subset_coeffs(a, m); });

  EpigraphSolve sol;
  std::set<Subset> have(keys.begin(), keys.end());
  for (long round = 0;; ++round) {
    sol = solve_epigraph<Subset>(m, keys, value_of, coeffs_of);
    if (opts.strategy == SolveOptions::Strategy::Dense) break;
    Measure mu(GroundSet(m), sol.weights);
    std::optional<Subset> cut = dense_separation(f, mu, sol.optimum);
    if (!cut) break;
    if (round + 1 >= opts.iteration_cap)
      throw SolverError("chebyshev_distance: constraint-generation iteration cap exceeded");
    if (!have.insert(*cut).second)
      throw SolverError("chebyshev_distance: separation returned a known constraint");
    keys.push_back(*cut);
  }

  DistanceCertificate cert{sol.optimum, Measure(GroundSet(m), sol.weights), {}, std::move(sol.duals)};
  Measure& mu = cert.measure;
  for (Subset a = 0; a < f.table_size(); ++a)
    if (abs(f.value(a) - mu(a)) == cert.optimum) cert.active_sets.emplace_back(a);
  return cert;
}

DistanceCertificate symmetric_distance(const SymmetricSetFunction& sf, const SolveOptions& opts,
                                       const SeparationOracle& oracle) {
  if (opts.iteration_cap < 1) throw std::invalid_argument("SolveOptions: iteration_cap must be >= 1");
  const BlockStructure& blocks = sf.blocks();
  const int n = blocks.block_count();
  const std::uint64_t space = sf.profile_space();
  const bool enumerable = space <= opts.profile_budget;
  if (!enumerable && !oracle)
    throw std::invalid_argument(
        "symmetric_distance: profile space too large and no separation oracle available");

  std::vector<Profile> keys;
  bool dense = opts.strategy == SolveOptions::Strategy::Dense && enumerable;
  if (dense) {
    keys.reserve(space);
    Profile p(std::vector<int>(n, 0));
    do {
      keys.push_back(p);
    } while (next_profile(blocks, p));
  } else {
    keys = symmetric_seed(sf, opts);
  }

  auto value_of = std::function<Rational(const Profile&)>([&sf](const Profile& p) { return sf.value(p); });
  auto coeffs_of = std::function<std::vector<Rational>(const Profile&)>(profile_coeffs);

  EpigraphSolve sol;
  std::set<Profile> have(keys.begin(), keys.end());
  for (long round = 0;; ++round) {
    sol = solve_epigraph<Profile>(n, keys, value_of, coeffs_of);
    if (dense) break;
    std::optional<Profile> cut =
        enumerable ? profile_scan_separation(sf, sol.weights, sol.optimum)
                   : oracle(std::span<const Rational>(sol.weights), sol.optimum);
    if (!cut) break;
    if (round + 1 >= opts.iteration_cap)
      throw SolverError("symmetric_distance: constraint-generation iteration cap exceeded");
    if (!have.insert(*cut).second)
      throw SolverError("symmetric_distance: separation returned a known constraint");
    keys.push_back(*cut);
  }

  DistanceCertificate cert{sol.optimum, block_constant_measure(blocks, sol.weights), {}, std::move(sol.duals)};
  if (enumerable) {
    Profile p(std::vector<int>(n, 0));
    do {
      if (abs(profile_residual(sf, sol.weights, p)) == cert.optimum)
        cert.active_sets.emplace_back(p);
    } while (next_profile(blocks, p));
  } else {
    // Profile space not enumerable: record the attaining constraints among
    // those the solve actually saw.
    for (const Profile& p : keys)
      if (abs(profile_residual(sf, sol.weights, p)) == cert.optimum)
        cert.active_sets.emplace_back(p);
  }
  return cert;
}

namespace {

struct OracleBest {
  Rational violation;
  Profile profile;
  bool any = false;

  void consider(const Rational& v, Profile p) {
    if (!any || v > violation) {
      violation = v;
      profile = std::move(p);
      any = true;
    }
  }
};

}  // namespace

std::optional<Profile> fkn_separation_oracle(const FamilyParams& params,
                                             std::span<const Rational> y, const Rational& t) {
  const int k = params.k, n = params.n;
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("fkn_separation_oracle: y must have one weight per block");
  const Rational zero = 0, three = 3, one = 1;
  OracleBest best;

  // Empty profile: residual |value - 0| with value 0.
  best.consider(zero, Profile(std::vector<int>(n, 0)));

  auto consider_extreme = [&](const Rational& target, const std::vector<int>& counts,
                              const Rational& dot) { best.consider(abs(target - dot), Profile(counts)); };

  // Sets meeting every block with at least one block full (value 3): force
  // block jf full, optimize the rest over {1..k} toward each endpoint.
  for (int jf = 0; jf < n; ++jf) {
    for (int dir = 0; dir < 2; ++dir) {  // 0: minimize the dot, 1: maximize
      std::vector<int> counts(n);
      Rational dot;
      for (int j = 0; j < n; ++j) {
        if (j == jf) {
          counts[j] = k;
        } else {
          bool low = (y[j] >= zero) == (dir == 0);
          counts[j] = low ? 1 : k;
        }
        dot += Rational(counts[j]) * y[j];
      }
      consider_extreme(three, counts, dot);
    }
  }

  // Value-1 sets missing some block: force block j0 empty, the rest range
  // over {0..k}; a bump keeps the profile nonzero when the extreme is zero.
  for (int j0 = 0; j0 < n; ++j0) {
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<int> counts(n, 0);
      Rational dot;
      for (int j = 0; j < n; ++j) {
        if (j == j0) continue;
        bool take_full = (dir == 0) ? (y[j] < zero) : (y[j] > zero);
        if (take_full) {
          counts[j] = k;
          dot += Rational(k) * y[j];
        }
      }
      bool all_zero = std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
      if (all_zero) {
        int bump = -1;
        for (int j = 0; j < n; ++j) {
          if (j == j0) continue;
          if (bump < 0 || (dir == 0 ? y[j] < y[bump] : y[j] > y[bump])) bump = j;
        }
        counts[bump] = 1;
        dot += y[bump];
      }
      consider_extreme(one, counts, dot);
    }
  }

  // Value-1 sets meeting every block properly: counts range over {1..k-1}.
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<int> counts(n);
    Rational dot;
    for (int j = 0; j < n; ++j) {
      bool low = (y[j] >= zero) == (dir == 0);
      counts[j] = low ? 1 : k - 1;
      dot += Rational(counts[j]) * y[j];
    }
    consider_extreme(one, counts, dot);
  }

  if (best.violation > t) return best.profile;
  return std::nullopt;
}

SeparationOracle make_fkn_oracle(const FamilyParams& params) {
  return [params](std::span<const Rational> y, const Rational& t) {
    return fkn_separation_oracle(params, y, t);
  };
}

namespace {

VerifyResult fail(const char* check) { return {false, check}; }

template <typename ResidualOf>
VerifyResult verify_common(const DistanceCertificate& cert, int vars,
                           const std::function<Rational(const ConstraintKey&)>& value_of,
                           const std::function<std::vector<Rational>(const ConstraintKey&)>& coeffs_of,
                           ResidualOf&& residual_of) {
  if (cert.optimum < Rational(0)) return fail("optimum-negative");

  Rational weight_sum;
  std::vector<Rational> balance(vars);
  Rational objective;
  for (const DualEntry& entry : cert.dual_weights) {
    if (entry.sign != 1 && entry.sign != -1) return fail("dual-sign");
    if (entry.weight < Rational(0)) return fail("dual-weight-negative");
    weight_sum += entry.weight;
    const Rational signed_weight = entry.sign == 1 ? entry.weight : -entry.weight;
    const std::vector<Rational> coef = coeffs_of(entry.key);
    for (int v = 0; v < vars; ++v)
      if (!coef[v].is_zero()) balance[v] += signed_weight * coef[v];
    objective += signed_weight * value_of(entry.key);
  }
  if (weight_sum != Rational(1)) return fail("dual-weights-sum");
  for (int v = 0; v < vars; ++v)
    if (!balance[v].is_zero()) return fail("dual-balance");
  if (objective != cert.optimum) return fail("dual-objective");

  if (cert.active_sets.empty()) return fail("active-sets-empty");
  Rational active_max;
  bool first = true;
  for (const ConstraintKey& key : cert.active_sets) {
    Rational r = residual_of(key);
    if (r > cert.optimum) return fail("primal-bound-exceeded");
    if (first || r > active_max) active_max = r;
    first = false;
  }
  if (active_max != cert.optimum) return fail("active-sets-max");
  return {true, ""};
}

}  // namespace

VerifyResult verify_certificate(const SetFunction& f, const DistanceCertificate& cert) {
  const int m = f.m();
  if (cert.measure.m() != m) return fail("measure-size");
  for (const DualEntry& e : cert.dual_weights)
    if (!std::holds_alternative<Subset>(e.key)) return fail("key-kind");
  for (const ConstraintKey& k : cert.active_sets)
    if (!std::holds_alternative<Subset>(k)) return fail("key-kind");

  auto value_of = std::function<Rational(const ConstraintKey&)>(
      [&f](const ConstraintKey& k) { return f.value(std::get<Subset>(k)); });
  auto coeffs_of = std::function<std::vector<Rational>(const ConstraintKey&)>(
      [m](const ConstraintKey& k) { return subset_coeffs(std::get<Subset>(k), m); });
  auto residual_of = [&](const ConstraintKey& k) {
    return abs(f.value(std::get<Subset>(k)) - cert.measure(std::get<Subset>(k)));
  };
  VerifyResult common = verify_common(cert, m, value_of, coeffs_of, residual_of);
  if (!common.ok) return common;

  for (Subset a = 0; a < f.table_size(); ++a)
    if (abs(f.value(a) - cert.measure(a)) > cert.optimum) return fail("primal-bound-exceeded");
  return {true, ""};
}

VerifyResult verify_certificate(const SymmetricSetFunction& sf, const DistanceCertificate& cert,
                                const SeparationOracle& oracle) {
  const BlockStructure& blocks = sf.blocks();
  const int n = blocks.block_count();
  if (cert.measure.m() != blocks.ground_size()) return fail("measure-size");
  for (const DualEntry& e : cert.dual_weights)
    if (!std::holds_alternative<Profile>(e.key)) return fail("key-kind");
  for (const ConstraintKey& k : cert.active_sets)
    if (!std::holds_alternative<Profile>(k)) return fail("key-kind");

  // The measure must be block-constant; its per-block atom weights are the
  // LP variables the balance conditions refer to.
  std::vector<Rational> y(n);
  for (int j = 0; j < n; ++j) {
    int off = blocks.block_offset(j);
    y[j] = cert.measure.atom(off);
    for (int i = 1; i < blocks.sizes[j]; ++i)
      if (cert.measure.atom(off + i) != y[j]) return fail("measure-not-block-constant");
  }

  auto value_of = std::function<Rational(const ConstraintKey&)>(
      [&sf](const ConstraintKey& k) { return sf.value(std::get<Profile>(k)); });
  auto coeffs_of = std::function<std::vector<Rational>(const ConstraintKey&)>(
      [](const ConstraintKey& k) { return profile_coeffs(std::get<Profile>(k)); });
  auto residual_of = [&](const ConstraintKey& k) {
    return abs(profile_residual(sf, y, std::get<Profile>(k)));
  };
  VerifyResult common = verify_common(cert, n, value_of, coeffs_of, residual_of);
  if (!common.ok) return common;

  if (sf.profile_space() <= SolveOptions{}.profile_budget) {
    Profile p(std::vector<int>(n, 0));
    do {
      if (abs(profile_residual(sf, y, p)) > cert.optimum) return fail("primal-bound-exceeded");
    } while (next_profile(blocks, p));
  } else if (oracle) {
    if (oracle(std::span<const Rational>(y), cert.optimum)) return fail("primal-bound-exceeded");
  } else {
    return fail("primal-scan-unavailable");
  }
  return {true, ""};
}

Rational restricted_distance(const SetFunction& f, const std::vector<Subset>& keys) {
  if (keys.empty()) throw std::invalid_argument("restricted_distance: need at least one constraint");
  const int m = f.m();
  auto value_of = std::function<Rational(const Subset&)>([&f](const Subset& a) { return f.value(a); });
  auto coeffs_of =
      std::function<std::vector<Rational>(const Subset&)>([m](const Subset& a) { return subset_coeffs(a, m); });
  return solve_epigraph<Subset>(m, keys, value_of, coeffs_of).optimum;
}

}  // namespace kalton
