#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "kalton/bounds.hpp"
#include "kalton/chebyshev.hpp"
#include "kalton/core.hpp"
#include "kalton/search.hpp"

namespace kalton::io {

// Set-function file: `m=<int>`, `default=<p/q>`, then `<subset-hex> <p/q>`
// overrides. The writer picks the most frequent value as the default.
void write_set_function(std::ostream& os, const SetFunction& f);
SetFunction read_set_function(std::istream& is);

// Symmetric-function file: `blocks=<k1>,<k2>,...`, `rule=table|fkn`; table
// rules list every `<c1>,<c2>,... <p/q>` line.
void write_symmetric(std::ostream& os, const SymmetricSetFunction& sf);
SymmetricSetFunction read_symmetric(std::istream& is);

using AnyFunction = std::variant<SetFunction, SymmetricSetFunction>;

// Sniffs the format from the first line (m= vs blocks=).
AnyFunction read_function_file(const std::string& path);
void write_function_file(const std::string& path, const AnyFunction& f);

// Certificate file: `optimum=<p/q>`, `atoms=<p/q>,...`, then
// `dual <subset-hex-or-profile> <+|-> <p/q>` lines. Active sets are
// reconstructed against the function when reading.
void write_certificate(std::ostream& os, const DistanceCertificate& cert);
DistanceCertificate read_certificate(std::istream& is, const AnyFunction& f);

// results.csv: nine matrix entries, exact and decimal distance, survivor flag.
void write_search_csv(std::ostream& os, const SearchResult& result);

// CSV with header k,n,m,a_formula,a_formula_dec,lp_distance,best_lower,kw_lower,ks_lower.
void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows);
std::vector<BoundRow> read_bounds_csv(std::istream& is);

}  // namespace kalton::io
