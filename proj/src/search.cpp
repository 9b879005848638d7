#include "kalton/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace kalton {

SearchConfig SearchConfig::with_step(const Rational& step) {
  if (!(step > Rational(0))) throw std::invalid_argument("SearchConfig: grid step must be positive");
  SearchConfig cfg;
  for (Rational v = Rational(-3); v <= Rational(3); v += step) cfg.grid.push_back(v);
  if (cfg.grid.empty() || cfg.grid.back() != Rational(3))
    throw std::invalid_argument("SearchConfig: step must divide the grid span");
  return cfg;
}

namespace {

// Grid values lying in [lo, hi] (the grid is sorted).
std::vector<Rational> grid_in(const std::vector<Rational>& grid, const Rational& lo,
                              const Rational& hi) {
  std::vector<Rational> out;
  for (const Rational& v : grid)
    if (v >= lo && v <= hi) out.push_back(v);
  return out;
}

struct Interval {
  Rational lo, hi;

  // |center - x| <= 1  <=>  x in [center-1, center+1]
  static Interval around(const Rational& center) {
    return {center - Rational(1), center + Rational(1)};
  }
  Interval meet(const Interval& o) const { return {max(lo, o.lo), min(hi, o.hi)}; }
  bool empty() const { return lo > hi; }
};

}  // namespace

void enumerate_candidates(const SearchConfig& cfg,
                          const std::function<void(const CandidateMatrix&)>& yield) {
  if (cfg.grid.empty()) throw std::invalid_argument("enumerate_candidates: empty grid");
  if (!std::is_sorted(cfg.grid.begin(), cfg.grid.end()))
    throw std::invalid_argument("enumerate_candidates: grid must be sorted");
  const Interval unit{Rational(-1), Rational(1)};

  for (const Rational& a12 : grid_in(cfg.grid, unit.lo, unit.hi)) {
    for (const Rational& a21 : grid_in(cfg.grid, unit.lo, unit.hi)) {
      // (i) bounds a22; (v) ties it to a12 + a21
      Interval i22 = unit.meet(Interval::around(a12 + a21));
      if (i22.empty()) continue;
      for (const Rational& a22 : grid_in(cfg.grid, i22.lo, i22.hi)) {
        Interval i13 = Interval::around(a12 + a12);  // (ii)
        for (const Rational& a13 : grid_in(cfg.grid, i13.lo, i13.hi)) {
          Interval i31 = Interval::around(a21 + a21);  // (iii)
          for (const Rational& a31 : grid_in(cfg.grid, i31.lo, i31.hi)) {
            // (vi) and (vii) pin a23
            Interval i23 = Interval::around(a22 + a22).meet(Interval::around(a12 + a22));
            if (i23.empty()) continue;
            for (const Rational& a23 : grid_in(cfg.grid, i23.lo, i23.hi)) {
              // (vi) and (viii) pin a32
              Interval i32 = Interval::around(a22 + a22).meet(Interval::around(a21 + a22));
              if (i32.empty()) continue;
              for (const Rational& a32 : grid_in(cfg.grid, i32.lo, i32.hi)) {
                // (iv), (vi) and both parts of (ix) pin a33
                Interval i33 = Interval::around(a13 + a31)
                                   .meet(Interval::around(a22 + a22))
                                   .meet(Interval::around(a32 + a12))
                                   .meet(Interval::around(a23 + a21));
                if (i33.empty()) continue;
                for (const Rational& a33 : grid_in(cfg.grid, i33.lo, i33.hi)) {
                  CandidateMatrix m;
                  m.at(1, 2) = a12;
                  m.at(1, 3) = a13;
                  m.at(2, 1) = a21;
                  m.at(2, 2) = a22;
                  m.at(2, 3) = a23;
                  m.at(3, 1) = a31;
                  m.at(3, 2) = a32;
                  m.at(3, 3) = a33;
                  yield(m);
                }
              }
            }
          }
        }
      }
    }
  }
}

std::vector<CandidateMatrix> enumerate_candidates(const SearchConfig& cfg) {
  std::vector<CandidateMatrix> out;
  enumerate_candidates(cfg, [&out](const CandidateMatrix& m) { out.push_back(m); });
  return out;
}

CandidateMatrix canonical_sign(const CandidateMatrix& m) {
  for (const Rational& v : m.a) {
    if (v.is_zero()) continue;
    return v > Rational(0) ? m : m.negated();
  }
  return m;  // zero matrix
}

SearchResult run_search(const SearchConfig& cfg) {
  if (cfg.k < 2) throw std::invalid_argument("run_search: k must be >= 2");
  if (cfg.dedup_sign)
    for (const Rational& v : cfg.grid)
      if (!std::binary_search(cfg.grid.begin(), cfg.grid.end(), -v))
        throw std::invalid_argument("run_search: sign dedup needs a grid symmetric about 0");

  SearchResult result;
  result.config = cfg;

  std::vector<CandidateMatrix> kept;
  enumerate_candidates(cfg, [&](const CandidateMatrix& m) {
    ++result.total_enumerated;
    if (m.is_zero()) return;
    ++result.total_nonzero;
    if (cfg.dedup_sign && canonical_sign(m) != m) return;
    kept.push_back(m);
  });
  result.total_after_sign_dedup = cfg.dedup_sign ? kept.size() : result.total_nonzero;

  result.ranked.resize(kept.size());
  SolveOptions opts;  // dense over the (k+1)^2 profiles
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(kept.size()); ++i) {
    try {
      const CandidateMatrix& m = kept[i];
      SymmetricSetFunction sf = matrix_profile_function(m, cfg.k);
      DistanceCertificate cert = symmetric_distance(sf, opts);
      if (VerifyResult v = verify_certificate(sf, cert); !v.ok)
        throw SolverError("run_search: certificate failed check '" + v.failed_check +
                          "' for matrix " + [&] {
                            std::string s;
                            for (const Rational& e : m.a) s += e.str() + " ";
                            return s;
                          }());
      result.ranked[i] = RankedCandidate{m, std::move(cert), false};
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const RankedCandidate& x, const RankedCandidate& y) {
              if (x.certificate.optimum != y.certificate.optimum)
                return x.certificate.optimum > y.certificate.optimum;
              return x.matrix < y.matrix;
            });
  for (RankedCandidate& rc : result.ranked) {
    rc.survivor = rc.certificate.optimum >= cfg.threshold;
    if (rc.survivor) ++result.survivor_count;
  }
  return result;
}

}  // namespace kalton
