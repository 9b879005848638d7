#pragma once

#include <array>
#include <string>
#include <vector>

#include "kalton/core.hpp"

namespace kalton {

struct FamilyParams {
  int k;
  int n;

  FamilyParams(int k_, int n_) : k(k_), n(n_) {
    if (k < 2 || n < 2) throw std::invalid_argument("FamilyParams: k, n must be >= 2");
  }
};

// The 0/1/3 family on n blocks of size k, in profile form.
SymmetricSetFunction make_fkn(const FamilyParams& p);

// 3x3 rational matrix encoding a two-block set function; a11 is pinned to 0
// (the value at the empty set). Entries indexed 1..3.
struct CandidateMatrix {
  std::array<Rational, 9> a{};

  CandidateMatrix() = default;
  // Entries a12,a13,a21,a22,a23,a31,a32,a33 in row-major order (a11 = 0).
  static CandidateMatrix from_entries(const std::array<Rational, 8>& entries);

  const Rational& at(int i, int j) const { return a[(i - 1) * 3 + (j - 1)]; }
  Rational& at(int i, int j) { return a[(i - 1) * 3 + (j - 1)]; }

  CandidateMatrix negated() const;
  bool is_zero() const;

  friend bool operator==(const CandidateMatrix&, const CandidateMatrix&) = default;
  // Row-major lexicographic order.
  friend auto operator<=>(const CandidateMatrix&, const CandidateMatrix&) = default;
};

struct OneAdditiveCheck {
  bool ok;
  std::vector<std::string> violated;  // labels i..ix, subscripted for multi-part conditions
};

// The nine closed-form conditions equivalent to 1-additivity of the
// matrix-encoded function (for every block size k >= 2 with enough room for
// proper subsets).
OneAdditiveCheck matrix_is_one_additive(const CandidateMatrix& m);

// Dense two-block function on 2k elements: subsets classified by
// (|A n X1|, |A n X2|) in {empty, proper, full}^2 and assigned at(row, col).
SetFunction instantiate_matrix(const CandidateMatrix& m, int k);

// Same function in profile form on blocks (k, k); cheap for LP work.
SymmetricSetFunction matrix_profile_function(const CandidateMatrix& m, int k);

// Per-block optimal measure total x_j = 4k/((n+1)k - 1).
Rational closed_form_xj(int k, int n);
// t = n * x_j = 4nk/((n+1)k - 1).
Rational closed_form_total(int k, int n);
// a_{k,n} = 3 - 4(k + n - 1)/((n+1)k - 1); lower estimate for the family's
// distance to the measures, increasing to 3.
Rational lower_bound_a(int k, int n);

}  // namespace kalton
