#include "kalton/family.hpp"

namespace kalton {

SymmetricSetFunction make_fkn(const FamilyParams& p) {
  return SymmetricSetFunction::three_class(BlockStructure::equal(p.k, p.n));
}

CandidateMatrix CandidateMatrix::from_entries(const std::array<Rational, 8>& entries) {
  CandidateMatrix m;
  for (int i = 0; i < 8; ++i) m.a[i + 1] = entries[i];
  return m;
}

CandidateMatrix CandidateMatrix::negated() const {
  CandidateMatrix m;
  for (int i = 0; i < 9; ++i) m.a[i] = -a[i];
  return m;
}

bool CandidateMatrix::is_zero() const {
  for (const auto& v : a)
    if (!v.is_zero()) return false;
  return true;
}

OneAdditiveCheck matrix_is_one_additive(const CandidateMatrix& m) {
  const Rational one = 1;
  const Rational &a12 = m.at(1, 2), &a13 = m.at(1, 3), &a21 = m.at(2, 1), &a22 = m.at(2, 2),
                 &a23 = m.at(2, 3), &a31 = m.at(3, 1), &a32 = m.at(3, 2), &a33 = m.at(3, 3);
  OneAdditiveCheck check{true, {}};
  auto require = [&](bool holds, const char* label) {
    if (!holds) {
      check.ok = false;
      check.violated.emplace_back(label);
    }
  };
  require(abs(a12) <= one, "i(a12)");
  require(abs(a21) <= one, "i(a21)");
  require(abs(a22) <= one, "i(a22)");
  require(abs(a12 + a12 - a13) <= one, "ii");
  require(abs(a21 + a21 - a31) <= one, "iii");
  require(abs(a13 + a31 - a33) <= one, "iv");
  require(abs(a12 + a21 - a22) <= one, "v");
  require(abs(a22 + a22 - a23) <= one, "vi(a23)");
  require(abs(a22 + a22 - a32) <= one, "vi(a32)");
  require(abs(a22 + a22 - a33) <= one, "vi(a33)");
  require(abs(a12 + a22 - a23) <= one, "vii");
  require(abs(a21 + a22 - a32) <= one, "viii");
  require(abs(a33 - a32 - a12) <= one, "ix(a32+a12)");
  require(abs(a33 - a23 - a21) <= one, "ix(a23+a21)");
  return check;
}

namespace {

// Row/column class of a per-block count: 1 empty, 2 proper, 3 full.
int count_class(int c, int k) { return c == 0 ? 1 : (c == k ? 3 : 2); }

}  // namespace

SetFunction instantiate_matrix(const CandidateMatrix& m, int k) {
  if (k < 2) throw std::invalid_argument("instantiate_matrix: k must be >= 2");
  return expand(matrix_profile_function(m, k));
}

SymmetricSetFunction matrix_profile_function(const CandidateMatrix& m, int k) {
  if (k < 2) throw std::invalid_argument("matrix_profile_function: k must be >= 2");
  if (!m.at(1, 1).is_zero())
    throw std::invalid_argument("matrix_profile_function: a11 must be 0");
  BlockStructure blocks = BlockStructure::equal(k, 2);
  std::vector<Rational> table(static_cast<std::size_t>(k + 1) * (k + 1));
  std::size_t idx = 0;
  for (int c1 = 0; c1 <= k; ++c1)
    for (int c2 = 0; c2 <= k; ++c2)
      table[idx++] = m.at(count_class(c1, k), count_class(c2, k));
  return SymmetricSetFunction::table(std::move(blocks), std::move(table));
}

Rational closed_form_xj(int k, int n) {
  if (k < 2 || n < 2) throw std::invalid_argument("closed_form_xj: k, n must be >= 2");
  return Rational(4L * k, static_cast<long>(n + 1) * k - 1);
}

Rational closed_form_total(int k, int n) {
  return Rational(static_cast<long>(n), 1) * closed_form_xj(k, n);
}

Rational lower_bound_a(int k, int n) {
  if (k < 2 || n < 2) throw std::invalid_argument("lower_bound_a: k, n must be >= 2");
  const Rational x = closed_form_xj(k, n);
  return Rational(3) - x - Rational(static_cast<long>(n) - 1, k) * x;
}

}  // namespace kalton
