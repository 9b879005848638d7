#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kalton/chebyshev.hpp"
#include "kalton/family.hpp"

namespace kalton {

struct SearchConfig {
  std::vector<Rational> grid;  // candidate entry values, sorted ascending
  int k = 4;                   // block size for the distance ranking
  Rational threshold{7, 5};
  bool dedup_sign = true;

  // -3..3 in the given step (default 1/2), the grid the enumeration ran on.
  static SearchConfig with_step(const Rational& step = Rational(1, 2));
};

// Every grid matrix satisfying the nine 1-additivity conditions, emitted in
// lexicographic entry order (a12, a21, a22, a13, a31, a23, a32, a33) with
// interval pruning; includes the zero matrix.
void enumerate_candidates(const SearchConfig& cfg,
                          const std::function<void(const CandidateMatrix&)>& yield);
std::vector<CandidateMatrix> enumerate_candidates(const SearchConfig& cfg);

// Sign normal form: the first nonzero entry in row-major order is positive.
// canonical_sign(-A) == canonical_sign(A).
CandidateMatrix canonical_sign(const CandidateMatrix& m);

struct RankedCandidate {
  CandidateMatrix matrix;
  DistanceCertificate certificate;
  bool survivor = false;  // distance >= threshold
};

struct SearchResult {
  SearchConfig config;
  std::uint64_t total_enumerated = 0;  // predicate-passing grid matrices incl. zero
  std::uint64_t total_nonzero = 0;
  std::uint64_t total_after_sign_dedup = 0;
  std::uint64_t survivor_count = 0;
  // Descending by distance, ties in ascending row-major matrix order.
  std::vector<RankedCandidate> ranked;
};

// Enumerate, deduplicate by sign, solve the exact two-block symmetric LP for
// every candidate at k, verify every certificate, rank, and cut at the
// threshold. Solves run in parallel; the result is scheduling-independent.
SearchResult run_search(const SearchConfig& cfg);

}  // namespace kalton
