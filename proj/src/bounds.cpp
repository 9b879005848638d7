#include "kalton/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "kalton/chebyshev.hpp"
#include "kalton/family.hpp"

namespace kalton {

std::vector<BoundRow> bounds_table(const std::vector<std::pair<int, int>>& grid, bool solve_lp) {
  std::vector<BoundRow> rows(grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
    try {
      auto [k, n] = grid[i];
      BoundRow row;
      row.k = k;
      row.n = n;
      row.m = k * n;
      row.a_formula = lower_bound_a(k, n);
      if (solve_lp) {
        FamilyParams params(k, n);
        SymmetricSetFunction sf = make_fkn(params);
        SolveOptions opts;
        opts.strategy = SolveOptions::Strategy::ConstraintGeneration;
        DistanceCertificate cert = symmetric_distance(sf, opts, make_fkn_oracle(params));
        if (VerifyResult v = verify_certificate(sf, cert, make_fkn_oracle(params)); !v.ok)
          throw SolverError("bounds_table: certificate failed check '" + v.failed_check + "'");
        row.lp_distance = cert.optimum;
      }
      row.best_lower = row.a_formula;
      if (row.lp_distance) {
        row.best_lower = max(row.best_lower, *row.lp_distance);
        row.lp_below_formula = *row.lp_distance < row.a_formula;
      }
      row.kw_lower = row.best_lower / Rational(2);
      row.ks_lower = row.best_lower / Rational(4);
      rows[i] = std::move(row);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const BoundRow& a, const BoundRow& b) {
    if (a.m != b.m) return a.m < b.m;
    return a.k < b.k;
  });
  return rows;
}

namespace {

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("grid spec: expected a..b in '" + text + "'");
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  if (lo < 2 || hi < lo) throw std::invalid_argument("grid spec: bad range '" + text + "'");
  return {lo, hi};
}

}  // namespace

std::vector<std::pair<int, int>> parse_grid_spec(const std::string& spec) {
  std::vector<std::pair<int, int>> grid;
  if (spec.rfind("diag:", 0) == 0) {
    auto [lo, hi] = parse_range(spec.substr(5));
    for (int k = lo; k <= hi; ++k) grid.emplace_back(k, k);
    return grid;
  }
  if (spec.rfind("rect:", 0) == 0) {
    std::string body = spec.substr(5);
    auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("grid spec: rect needs two ranges in '" + spec + "'");
    auto [klo, khi] = parse_range(body.substr(0, comma));
    auto [nlo, nhi] = parse_range(body.substr(comma + 1));
    for (int k = klo; k <= khi; ++k)
      for (int n = nlo; n <= nhi; ++n) grid.emplace_back(k, n);
    return grid;
  }
  // explicit pairs "k,n;k,n"
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto semi = spec.find(';', pos);
    std::string pair_text = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    auto comma = pair_text.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("grid spec: expected k,n in '" + pair_text + "'");
    int k = std::stoi(pair_text.substr(0, comma));
    int n = std::stoi(pair_text.substr(comma + 1));
    if (k < 2 || n < 2) throw std::invalid_argument("grid spec: k, n must be >= 2");
    grid.emplace_back(k, n);
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (grid.empty()) throw std::invalid_argument("grid spec: no pairs in '" + spec + "'");
  return grid;
}

}  // namespace kalton
