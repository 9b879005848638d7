#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kalton/rational.hpp"

namespace kalton {

// Subsets of the ground set are bitmasks: element i <-> bit i.
using Subset = std::uint32_t;

// Hard cap for dense (full power-set table) representations. The env var
// KALTON_GAP_MAX_M may lower it for a process, never raise it.
int dense_cap();

int popcount(Subset s);

struct GroundSet {
  int m;

  explicit GroundSet(int m_) : m(m_) {
    if (m < 1) throw std::invalid_argument("GroundSet: m must be >= 1");
  }
  Subset full_mask() const;  // requires m <= 31
  std::size_t subset_count() const { return std::size_t(1) << m; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;
};

// Partition of the ground set into consecutive blocks X_1..X_n; element j
// belongs to the block covering index j in concatenation order.
struct BlockStructure {
  std::vector<int> sizes;  // k_1..k_n, all >= 1

  explicit BlockStructure(std::vector<int> block_sizes);
  // n blocks of equal size k (ground size m = k*n).
  static BlockStructure equal(int k, int n);

  int block_count() const { return static_cast<int>(sizes.size()); }
  int ground_size() const;
  GroundSet ground() const { return GroundSet(ground_size()); }
  Subset block_mask(int j) const;  // requires ground_size() <= 31
  int block_offset(int j) const;

  // Number of profiles prod(k_j + 1), clamped at uint64 max on overflow.
  std::uint64_t profile_space_saturated() const;

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;
};

// Orbit invariant of a subset under block-preserving permutations:
// counts[j] = |A intersect X_j|.
struct Profile {
  std::vector<int> counts;

  Profile() = default;
  explicit Profile(std::vector<int> c) : counts(std::move(c)) {}

  int size() const { return static_cast<int>(counts.size()); }
  std::string str() const;  // "c1,c2,..."
  static Profile parse(std::string_view text, int expected_blocks = -1);

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

Profile profile_of(const BlockStructure& blocks, Subset a);
// Representative subset with the first counts[j] elements of each block.
Subset representative_subset(const BlockStructure& blocks, const Profile& p);

// Dense rational-valued function on the full power set of a ground set.
class SetFunction {
 public:
  SetFunction(GroundSet ground, std::vector<Rational> values);
  static SetFunction zeros(GroundSet ground);

  int m() const { return ground_.m; }
  const GroundSet& ground() const { return ground_; }
  std::size_t table_size() const { return values_.size(); }
  const Rational& value(Subset a) const { return values_[a]; }
  Rational& value(Subset a) { return values_[a]; }
  const Rational& empty_value() const { return values_[0]; }
  const std::vector<Rational>& values() const { return values_; }

 private:
  GroundSet ground_;
  std::vector<Rational> values_;
};

// Block-invariant set function given by a value per profile: either an
// explicit table (mixed-radix indexed) or the named three-class rule
// (0 at the empty profile; 3 when every block is touched and at least one
// block is full; 1 otherwise).
class SymmetricSetFunction {
 public:
  enum class Rule { Table, ThreeClass };

  static SymmetricSetFunction table(BlockStructure blocks, std::vector<Rational> profile_values);
  static SymmetricSetFunction three_class(BlockStructure blocks);

  Rule rule() const { return rule_; }
  const BlockStructure& blocks() const { return blocks_; }
  std::uint64_t profile_space() const { return blocks_.profile_space_saturated(); }

  Rational value(const Profile& p) const;

  // Mixed-radix profile indexing (c_1 most significant); valid only when
  // the profile space fits in size_t, which table construction enforces.
  std::size_t profile_index(const Profile& p) const;
  Profile profile_at(std::size_t index) const;

  const std::vector<Rational>& table_values() const { return table_; }

 private:
  SymmetricSetFunction(BlockStructure blocks, Rule rule, std::vector<Rational> table)
      : blocks_(std::move(blocks)), rule_(rule), table_(std::move(table)) {}

  BlockStructure blocks_;
  Rule rule_;
  std::vector<Rational> table_;  // empty for rule-based functions
};

// Finitely-additive signed measure: determined by its atom weights.
class Measure {
 public:
  Measure(GroundSet ground, std::vector<Rational> atom_weights);
  static Measure zeros(GroundSet ground);

  int m() const { return ground_.m; }
  const GroundSet& ground() const { return ground_; }
  const std::vector<Rational>& atoms() const { return atoms_; }
  const Rational& atom(int i) const { return atoms_[i]; }

  Rational operator()(Subset a) const;  // sum of weights over a
  SetFunction to_set_function() const;  // dense evaluation table

 private:
  GroundSet ground_;
  std::vector<Rational> atoms_;
};

// Dense expansion: result(A) = sf.value(profile of A). Requires the ground
// set to fit the dense cap.
SetFunction expand(const SymmetricSetFunction& sf);

// Inverse of expand for block-invariant dense functions; throws
// std::invalid_argument if f is not constant on profile orbits.
SymmetricSetFunction symmetrize(const SetFunction& f, const BlockStructure& blocks);

// Enumerate profiles of a block structure in mixed-radix (lexicographic)
// order; returns false when the iteration wraps back to all-zeros.
bool next_profile(const BlockStructure& blocks, Profile& p);

}  // namespace kalton
