#include "kalton/defect.hpp"

#include <stdexcept>
#include <string>

namespace kalton {

namespace {

constexpr int kDisjointScanCap = 16;  // 3^m disjoint pairs
constexpr int kAllPairsScanCap = 12;  // 4^m pairs

void check_cap(const SetFunction& f, int cap, const char* what) {
  if (f.m() > cap)
    throw std::invalid_argument(std::string(what) + ": ground set too large for exhaustive scan (m <= " +
                                std::to_string(cap) + ")");
}

struct Best {
  Rational defect;
  Subset a = 0, b = 0;

  void consider(const Rational& d, Subset ca, Subset cb) {
    if (d > defect || (d == defect && (ca < a || (ca == a && cb < b)))) {
      defect = d;
      a = ca;
      b = cb;
    }
  }
  // Merge keeps the lexicographically least witness among maximizers, so
  // the parallel scan is deterministic across thread counts.
  void merge(const Best& o) { consider(o.defect, o.a, o.b); }
};

// One row of the disjoint-pair scan: B over submasks of the complement of A.
// expr(A, B) must be the defining expression of the defect being scanned.
template <typename Expr>
Best scan_disjoint_row(const SetFunction& f, Subset a, Expr&& expr) {
  Best best{expr(a, Subset(0)), a, 0};
  Subset comp = f.ground().full_mask() & ~a;
  for (Subset b = comp; b != 0; b = (b - 1) & comp)
    best.consider(expr(a, b), a, b);
  return best;
}

template <typename Expr>
Best scan_all_pairs_row(const SetFunction& f, Subset a, Expr&& expr) {
  Best best{expr(a, Subset(0)), a, 0};
  const Subset count = static_cast<Subset>(f.table_size());
  for (Subset b = 1; b < count; ++b)
    best.consider(expr(a, b), a, b);
  return best;
}

template <typename RowScan>
DefectReport run_scan(const SetFunction& f, bool parallel, RowScan&& row) {
  const auto count = static_cast<std::int64_t>(f.table_size());
  Best best = row(Subset(0));
  if (parallel) {
#pragma omp parallel
    {
      Best local;
      local.defect = best.defect;  // row 0 already done; seed comparable state
      local.a = best.a;
      local.b = best.b;
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t a = 1; a < count; ++a) local.merge(row(static_cast<Subset>(a)));
#pragma omp critical
      best.merge(local);
    }
  } else {
    for (std::int64_t a = 1; a < count; ++a) best.merge(row(static_cast<Subset>(a)));
  }
  return DefectReport{best.defect, best.a, best.b, f.empty_value()};
}

DefectReport additivity_impl(const SetFunction& f, bool parallel) {
  check_cap(f, kDisjointScanCap, "additivity_defect");
  auto expr = [&f](Subset a, Subset b) { return abs(f.value(a) + f.value(b) - f.value(a | b)); };
  return run_scan(f, parallel, [&](Subset a) { return scan_disjoint_row(f, a, expr); });
}

DefectReport weak_modularity_impl(const SetFunction& f, bool parallel) {
  check_cap(f, kDisjointScanCap, "weak_modularity_defect");
  const Rational& e = f.empty_value();
  auto expr = [&f, &e](Subset a, Subset b) { return abs(f.value(a) + f.value(b) - f.value(a | b) - e); };
  return run_scan(f, parallel, [&](Subset a) { return scan_disjoint_row(f, a, expr); });
}

DefectReport modularity_impl(const SetFunction& f, bool parallel) {
  check_cap(f, kAllPairsScanCap, "modularity_defect");
  auto expr = [&f](Subset a, Subset b) {
    return abs(f.value(a) + f.value(b) - f.value(a | b) - f.value(a & b));
  };
  return run_scan(f, parallel, [&](Subset a) { return scan_all_pairs_row(f, a, expr); });
}

}  // namespace

DefectReport additivity_defect(const SetFunction& f) { return additivity_impl(f, true); }
DefectReport additivity_defect_serial(const SetFunction& f) { return additivity_impl(f, false); }

DefectReport modularity_defect(const SetFunction& f) { return modularity_impl(f, true); }
DefectReport modularity_defect_serial(const SetFunction& f) { return modularity_impl(f, false); }

DefectReport weak_modularity_defect(const SetFunction& f) { return weak_modularity_impl(f, true); }
DefectReport weak_modularity_defect_serial(const SetFunction& f) { return weak_modularity_impl(f, false); }

SetFunction shift_to_additive(const SetFunction& f) {
  std::vector<Rational> values(f.values());
  const Rational shift = f.empty_value();
  if (!shift.is_zero())
    for (auto& v : values) v -= shift;
  return SetFunction(f.ground(), std::move(values));
}

namespace {

// Disjoint profile pairs: a_j + b_j <= k_j per block, which is exactly the
// realizability condition for disjoint subsets with those profiles.
template <typename Expr>
ProfileDefectReport profile_pair_scan(const SymmetricSetFunction& sf, Expr&& expr) {
  const BlockStructure& blocks = sf.blocks();
  int n = blocks.block_count();
  Profile a(std::vector<int>(n, 0));
  ProfileDefectReport report;
  report.empty_value = sf.value(a);
  bool first = true;
  do {
    // b ranges over profiles with b_j <= k_j - a_j
    std::vector<int> room(n);
    for (int j = 0; j < n; ++j) room[j] = blocks.sizes[j] - a.counts[j];
    BlockStructure complement_room = [&] {
      std::vector<int> sizes(n);
      for (int j = 0; j < n; ++j) sizes[j] = room[j] > 0 ? room[j] : 1;
      return BlockStructure(sizes);
    }();
    Profile b(std::vector<int>(n, 0));
    do {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) ok = b.counts[j] <= room[j];
      if (!ok) continue;
      Profile u(std::vector<int>(n));
      for (int j = 0; j < n; ++j) u.counts[j] = a.counts[j] + b.counts[j];
      Rational d = expr(a, b, u);
      if (first || d > report.defect || (d == report.defect && std::pair(a, b) < std::pair(report.witness_a, report.witness_b))) {
        report.defect = d;
        report.witness_a = a;
        report.witness_b = b;
        first = false;
      }
    } while (next_profile(complement_room, b));
  } while (next_profile(blocks, a));
  return report;
}

}  // namespace

ProfileDefectReport additivity_defect(const SymmetricSetFunction& sf) {
  return profile_pair_scan(sf, [&sf](const Profile& a, const Profile& b, const Profile& u) {
    return abs(sf.value(a) + sf.value(b) - sf.value(u));
  });
}

ProfileDefectReport weak_modularity_defect(const SymmetricSetFunction& sf) {
  Profile zero(std::vector<int>(sf.blocks().block_count(), 0));
  const Rational e = sf.value(zero);
  return profile_pair_scan(sf, [&sf, &e](const Profile& a, const Profile& b, const Profile& u) {
    return abs(sf.value(a) + sf.value(b) - sf.value(u) - e);
  });
}

}  // namespace kalton
