#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "kalton/bounds.hpp"
#include "kalton/chebyshev.hpp"
#include "kalton/defect.hpp"
#include "kalton/family.hpp"
#include "kalton/io.hpp"
#include "kalton/search.hpp"

namespace {

using namespace kalton;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

SetFunction as_dense(const io::AnyFunction& f) {
  if (std::holds_alternative<SetFunction>(f)) return std::get<SetFunction>(f);
  return expand(std::get<SymmetricSetFunction>(f));
}

void print_defect(const DefectReport& report) {
  std::cout << "defect: " << report.defect.str() << " (~" << report.defect.decimal() << ")\n";
  std::cout << "f(empty): " << report.empty_value.str() << "\n";
  std::cout << "witness: A=0x" << std::hex << report.witness_a << " B=0x" << report.witness_b
            << std::dec << "\n";
}

int cmd_check(const std::string& path, const std::string& mode) {
  io::AnyFunction any = io::read_function_file(path);
  SetFunction f = as_dense(any);
  DefectReport report;
  if (mode == "additive")
    report = additivity_defect(f);
  else if (mode == "modular")
    report = modularity_defect(f);
  else if (mode == "weak")
    report = weak_modularity_defect(f);
  else
    throw CLI::ValidationError("--mode must be additive, modular or weak");
  print_defect(report);
  return kExitOk;
}

int cmd_distance(const std::string& path, bool symmetric, const std::string& strategy,
                 const std::string& cert_out) {
  io::AnyFunction any = io::read_function_file(path);
  SolveOptions opts;
  if (strategy == "cg")
    opts.strategy = SolveOptions::Strategy::ConstraintGeneration;
  else if (strategy != "dense")
    throw CLI::ValidationError("--strategy must be dense or cg");

  DistanceCertificate cert = [&] {
    if (symmetric || std::holds_alternative<SymmetricSetFunction>(any)) {
      if (!std::holds_alternative<SymmetricSetFunction>(any))
        throw std::invalid_argument("--symmetric needs a symmetric-function file");
      const SymmetricSetFunction& sf = std::get<SymmetricSetFunction>(any);
      SeparationOracle oracle;
      if (sf.rule() == SymmetricSetFunction::Rule::ThreeClass) {
        const auto& sizes = sf.blocks().sizes;
        bool equal = std::all_of(sizes.begin(), sizes.end(),
                                 [&](int k) { return k == sizes.front(); });
        if (equal && sizes.front() >= 2 && sf.blocks().block_count() >= 2)
          oracle = make_fkn_oracle(FamilyParams(sizes.front(), sf.blocks().block_count()));
      }
      DistanceCertificate c = symmetric_distance(sf, opts, oracle);
      if (VerifyResult v = verify_certificate(sf, c, oracle); !v.ok)
        throw SolverError("certificate failed check '" + v.failed_check + "'");
      return c;
    }
    const SetFunction& f = std::get<SetFunction>(any);
    DistanceCertificate c = chebyshev_distance(f, opts);
    if (VerifyResult v = verify_certificate(f, c); !v.ok)
      throw SolverError("certificate failed check '" + v.failed_check + "'");
    return c;
  }();

  std::cout << "distance: " << cert.optimum.str() << " (~" << cert.optimum.decimal() << ")\n";
  std::cout << "atoms:";
  for (int i = 0; i < cert.measure.m(); ++i) std::cout << " " << cert.measure.atom(i).str();
  std::cout << "\nactive sets: " << cert.active_sets.size()
            << ", dual entries: " << cert.dual_weights.size() << "\n";
  if (!cert_out.empty()) {
    std::ofstream os(cert_out);
    if (!os) throw std::invalid_argument("cannot open '" + cert_out + "' for writing");
    io::write_certificate(os, cert);
  }
  return kExitOk;
}

int cmd_family_fkn(int k, int n, bool expand_out, const std::string& out) {
  SymmetricSetFunction sf = make_fkn(FamilyParams(k, n));
  io::AnyFunction any = expand_out ? io::AnyFunction(expand(sf)) : io::AnyFunction(sf);
  io::write_function_file(out, any);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_family_matrix(const std::string& entries, int k, const std::string& out) {
  std::array<Rational, 8> a;
  std::istringstream is(entries);
  std::string tok;
  std::size_t i = 0;
  while (std::getline(is, tok, ',')) {
    if (i >= 8) throw std::invalid_argument("--entries needs exactly 8 values a12..a33");
    a[i++] = Rational::parse(tok);
  }
  if (i != 8) throw std::invalid_argument("--entries needs exactly 8 values a12..a33");
  CandidateMatrix m = CandidateMatrix::from_entries(a);
  auto [ok, violated] = matrix_is_one_additive(m);
  std::cout << "one-additive: " << (ok ? "yes" : "no");
  for (const std::string& label : violated) std::cout << " " << label;
  std::cout << "\n";
  io::write_function_file(out, io::AnyFunction(instantiate_matrix(m, k)));
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_family_bound(int k, int n) {
  Rational a = lower_bound_a(k, n);
  std::cout << a.str() << " (~" << a.decimal() << ")\n";
  return kExitOk;
}

int cmd_search(const std::string& step, int k, const std::string& threshold,
               const std::string& out) {
  SearchConfig cfg = SearchConfig::with_step(Rational::parse(step));
  cfg.k = k;
  cfg.threshold = Rational::parse(threshold);
  SearchResult result = run_search(cfg);
  std::cout << "enumerated: " << result.total_enumerated << " (" << result.total_nonzero
            << " nonzero, " << result.total_after_sign_dedup << " after sign dedup)\n";
  std::cout << "survivors at threshold " << cfg.threshold.str() << ": " << result.survivor_count
            << "\n";
  std::size_t shown = 0;
  for (const RankedCandidate& rc : result.ranked) {
    if (shown++ >= 5) break;
    std::cout << "  distance " << rc.certificate.optimum.str() << " (~"
              << rc.certificate.optimum.decimal() << ") matrix";
    for (const Rational& e : rc.matrix.a) std::cout << " " << e.str();
    std::cout << "\n";
  }
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw std::invalid_argument("cannot open '" + out + "' for writing");
    io::write_search_csv(os, result);
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_bounds(const std::string& grid_spec, bool lp, const std::string& out) {
  std::vector<BoundRow> rows = bounds_table(parse_grid_spec(grid_spec), lp);
  std::cout << "k\tn\tm\ta_formula\tlp_distance\tbest_lower\tkw_lower\tks_lower\n";
  for (const BoundRow& r : rows) {
    std::cout << r.k << "\t" << r.n << "\t" << r.m << "\t" << r.a_formula.str() << " (~"
              << r.a_formula.decimal() << ")\t"
              << (r.lp_distance ? r.lp_distance->str() + " (~" + r.lp_distance->decimal() + ")"
                                : "-")
              << "\t" << r.best_lower.str() << "\t" << r.kw_lower.str() << "\t"
              << r.ks_lower.str() << "\n";
    if (r.lp_below_formula)
      std::cout << "  warning: lp distance below the formula bound at (k=" << r.k
                << ", n=" << r.n << ")\n";
  }
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw std::invalid_argument("cannot open '" + out + "' for writing");
    io::write_bounds_csv(os, rows);
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_certify(const std::string& function_path, const std::string& cert_path) {
  io::AnyFunction any = io::read_function_file(function_path);
  std::ifstream is(cert_path);
  if (!is) throw std::invalid_argument("cannot open '" + cert_path + "'");
  DistanceCertificate cert = io::read_certificate(is, any);
  VerifyResult result = std::holds_alternative<SetFunction>(any)
                            ? verify_certificate(std::get<SetFunction>(any), cert)
                            : verify_certificate(std::get<SymmetricSetFunction>(any), cert);
  if (result.ok) {
    std::cout << "PASS optimum=" << cert.optimum.str() << "\n";
    return kExitOk;
  }
  std::cout << "FAIL " << result.failed_check << "\n";
  return kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Chebyshev distances from set functions to measures"};
  app.require_subcommand(1);

  std::string path, mode = "additive";
  auto* check = app.add_subcommand("check", "exact additivity/modularity defect of a function file");
  check->add_option("file", path)->required();
  check->add_option("--mode", mode, "additive|modular|weak");

  bool symmetric = false;
  std::string strategy = "dense", cert_out;
  auto* distance = app.add_subcommand("distance", "exact distance to the space of measures");
  distance->add_option("file", path)->required();
  distance->add_flag("--symmetric", symmetric, "treat the input as block-symmetric");
  distance->add_option("--strategy", strategy, "dense|cg");
  distance->add_option("--cert-out", cert_out, "write the optimality certificate");

  auto* family = app.add_subcommand("family", "generators and closed-form bounds");
  family->require_subcommand(1);
  int k = 2, n = 2;
  bool expand_flag = false;
  std::string out;
  auto* fkn = family->add_subcommand("fkn", "write the 0/1/3 family in profile or dense form");
  fkn->add_option("--k", k)->required();
  fkn->add_option("--n", n)->required();
  fkn->add_flag("--expand", expand_flag, "write the dense expansion");
  fkn->add_option("--out", out)->required();

  std::string entries;
  int mk = 4;
  std::string mout;
  auto* matrix = family->add_subcommand("matrix", "instantiate a two-block matrix function");
  matrix->add_option("--entries", entries, "a12,a13,a21,a22,a23,a31,a32,a33")->required();
  matrix->add_option("--k", mk, "block size");
  matrix->add_option("--out", mout)->required();

  int bk = 2, bn = 2;
  auto* bound = family->add_subcommand("bound", "closed-form lower bound a_{k,n}");
  bound->add_option("--k", bk)->required();
  bound->add_option("--n", bn)->required();

  std::string grid_step = "1/2", threshold = "7/5", search_out;
  int sk = 4;
  auto* search = app.add_subcommand("search", "enumerate and rank candidate matrices");
  search->add_option("--grid-step", grid_step);
  search->add_option("--k", sk);
  search->add_option("--threshold", threshold);
  search->add_option("--out", search_out, "results csv");

  std::string grid_spec;
  bool lp = false;
  std::string bounds_out;
  auto* bounds = app.add_subcommand("bounds", "lower-bound table over a (k, n) grid");
  bounds->add_option("--grid", grid_spec, "diag:a..b | rect:a..b,c..d | k,n;k,n")->required();
  bounds->add_flag("--lp", lp, "solve the exact family distance per row");
  bounds->add_option("--out", bounds_out, "csv output");

  std::string cert_path;
  auto* certify = app.add_subcommand("certify", "audit a distance certificate");
  certify->add_option("function", path)->required();
  certify->add_option("certificate", cert_path)->required();

  try {
    app.parse(argc, argv);
    if (*check) return cmd_check(path, mode);
    if (*distance) return cmd_distance(path, symmetric, strategy, cert_out);
    if (*fkn) return cmd_family_fkn(k, n, expand_flag, out);
    if (*matrix) return cmd_family_matrix(entries, mk, mout);
    if (*bound) return cmd_family_bound(bk, bn);
    if (*search) return cmd_search(grid_step, sk, threshold, search_out);
    if (*bounds) return cmd_bounds(grid_spec, lp, bounds_out);
    if (*certify) return cmd_certify(path, cert_path);
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
