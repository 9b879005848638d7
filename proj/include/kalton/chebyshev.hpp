#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kalton/core.hpp"
#include "kalton/family.hpp"

namespace kalton {

// Constraint identifier: a subset bitmask for dense solves, a profile for
// block-symmetric solves.
using ConstraintKey = std::variant<Subset, Profile>;

std::string key_str(const ConstraintKey& key);

struct DualEntry {
  ConstraintKey key;
  int sign;  // +1 or -1: which side of |f - mu| the weight certifies
  Rational weight;
};

// Optimal value together with a proof of optimality: the measure bounds the
// distance from above, the dual weights bound it from below, and both meet.
struct DistanceCertificate {
  Rational optimum;
  Measure measure;
  std::vector<ConstraintKey> active_sets;  // where |f - mu| attains the optimum
  std::vector<DualEntry> dual_weights;
};

struct SolveOptions {
  enum class Strategy { Dense, ConstraintGeneration };
  enum class Seed { Default, Minimal };

  Strategy strategy = Strategy::Dense;
  Seed initial_constraints = Seed::Default;
  long iteration_cap = 10000;  // constraint-generation rounds, >= 1
  // Dense profile enumeration limit for symmetric solves; beyond it a
  // separation oracle must be supplied.
  std::uint64_t profile_budget = 10'000'000;
  // Optional block structure whose blocks join the dense seed set.
  std::optional<BlockStructure> seed_blocks;
};

// Raised when constraint generation exceeds its iteration cap or the LP
// backend misbehaves; the CLI maps it to exit code 2.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// min over measures mu of max_A |f(A) - mu(A)|, exact. The returned
// certificate always passes verify_certificate.
DistanceCertificate chebyshev_distance(const SetFunction& f, const SolveOptions& opts = {});

// Given per-atom block weights y and a bound t, returns a profile whose
// residual |value(c) - sum_j c_j y_j| exceeds t (a most violated one), or
// nullopt when none does.
using SeparationOracle =
    std::function<std::optional<Profile>(std::span<const Rational> y, const Rational& t)>;

// Distance over block-constant measures (variables: one per-atom weight per
// block), which equals the unrestricted distance for block-invariant
// functions. Dense profile enumeration when the profile space fits the
// budget; otherwise the oracle drives constraint generation.
DistanceCertificate symmetric_distance(const SymmetricSetFunction& sf,
                                       const SolveOptions& opts = {},
                                       const SeparationOracle& oracle = nullptr);

// Polynomial-time separation for the three-class family: per-class greedy
// over the per-block count ranges, trying each forced-full (forced-empty)
// block in turn.
std::optional<Profile> fkn_separation_oracle(const FamilyParams& params,
                                             std::span<const Rational> y, const Rational& t);
SeparationOracle make_fkn_oracle(const FamilyParams& params);

struct VerifyResult {
  bool ok;
  std::string failed_check;  // empty when ok

  explicit operator bool() const { return ok; }
};

// Audits all certificate invariants in exact arithmetic: weight positivity
// and normalization, per-atom (per-block) balance, dual objective equal to
// the optimum, and the primal bound with the active sets attaining it.
VerifyResult verify_certificate(const SetFunction& f, const DistanceCertificate& cert);
VerifyResult verify_certificate(const SymmetricSetFunction& sf, const DistanceCertificate& cert,
                                const SeparationOracle& oracle = nullptr);

// Optimal value of the epigraph LP restricted to the given constraint sets;
// grows monotonically as constraints are added. Diagnostic surface for the
// constraint-generation path.
Rational restricted_distance(const SetFunction& f, const std::vector<Subset>& keys);

}  // namespace kalton
