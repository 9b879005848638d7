#pragma once

#include "kalton/core.hpp"

namespace kalton {

// Result of an exhaustive defect scan. The witness pair reproduces the
// defect exactly when plugged back into the defining expression, and is
// the lexicographically least (a, b) among maximizers.
struct DefectReport {
  Rational defect;
  Subset witness_a = 0;
  Subset witness_b = 0;
  Rational empty_value;
};

// max over disjoint A,B of |f(A)+f(B)-f(A u B)|; 3^m disjoint-pair scan,
// m <= 16. f is Delta-additive iff empty_value = 0 and defect <= Delta.
DefectReport additivity_defect(const SetFunction& f);
DefectReport additivity_defect_serial(const SetFunction& f);

// max over all A,B of |f(A)+f(B)-f(A u B)-f(A n B)|; 4^m scan, m <= 12.
DefectReport modularity_defect(const SetFunction& f);
DefectReport modularity_defect_serial(const SetFunction& f);

// max over disjoint A,B of |f(A)+f(B)-f(A u B)-f(empty)|; m <= 16.
DefectReport weak_modularity_defect(const SetFunction& f);
DefectReport weak_modularity_defect_serial(const SetFunction& f);

// g(A) = f(A) - f(empty); additivity_defect(g) = weak_modularity_defect(f).
SetFunction shift_to_additive(const SetFunction& f);

// Fast path for block-invariant functions: scan realizable disjoint profile
// pairs (a, b), a_j + b_j <= k_j, instead of subset pairs. Equals the dense
// scan after expand().
struct ProfileDefectReport {
  Rational defect;
  Profile witness_a;
  Profile witness_b;
  Rational empty_value;
};

ProfileDefectReport additivity_defect(const SymmetricSetFunction& sf);
ProfileDefectReport weak_modularity_defect(const SymmetricSetFunction& sf);

}  // namespace kalton
