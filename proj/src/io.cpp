#include "kalton/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace kalton::io {

namespace {

std::string subset_hex(Subset a) {
  std::ostringstream os;
  os << std::hex << a;
  return os.str();
}

Subset parse_subset_hex(const std::string& text, int m) {
  std::size_t pos = 0;
  unsigned long v = std::stoul(text, &pos, 16);
  if (pos != text.size() || v >= (1ul << m))
    throw std::invalid_argument("bad subset '" + text + "'");
  return static_cast<Subset>(v);
}

std::string expect_prefixed(std::istream& is, const std::string& prefix) {
  std::string line;
  if (!std::getline(is, line) || line.rfind(prefix, 0) != 0)
    throw std::invalid_argument("expected line starting with '" + prefix + "'");
  return line.substr(prefix.size());
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, sep)) out.push_back(token);
  return out;
}

}  // namespace

void write_set_function(std::ostream& os, const SetFunction& f) {
  std::map<Rational, std::size_t> freq;
  for (const Rational& v : f.values()) ++freq[v];
  Rational def;
  std::size_t best = 0;
  for (const auto& [v, count] : freq)
    if (count > best) {  // map order breaks ties toward the least value
      best = count;
      def = v;
    }
  os << "m=" << f.m() << "\n";
  os << "default=" << def.str() << "\n";
  for (Subset a = 0; a < f.table_size(); ++a)
    if (f.value(a) != def) os << subset_hex(a) << " " << f.value(a).str() << "\n";
}

SetFunction read_set_function(std::istream& is) {
  int m = std::stoi(expect_prefixed(is, "m="));
  if (m < 1 || m > dense_cap())
    throw std::invalid_argument("set-function file: m out of range (dense cap " +
                                std::to_string(dense_cap()) + ")");
  Rational def = Rational::parse(expect_prefixed(is, "default="));
  GroundSet ground(m);
  std::vector<Rational> values(ground.subset_count(), def);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto space = line.find(' ');
    if (space == std::string::npos)
      throw std::invalid_argument("set-function file: bad override line '" + line + "'");
    values[parse_subset_hex(line.substr(0, space), m)] = Rational::parse(line.substr(space + 1));
  }
  return SetFunction(ground, std::move(values));
}

void write_symmetric(std::ostream& os, const SymmetricSetFunction& sf) {
  const BlockStructure& blocks = sf.blocks();
  os << "blocks=";
  for (int j = 0; j < blocks.block_count(); ++j) os << (j ? "," : "") << blocks.sizes[j];
  os << "\n";
  if (sf.rule() == SymmetricSetFunction::Rule::ThreeClass) {
    os << "rule=fkn\n";
    return;
  }
  os << "rule=table\n";
  Profile p(std::vector<int>(blocks.block_count(), 0));
  do {
    os << p.str() << " " << sf.value(p).str() << "\n";
  } while (next_profile(blocks, p));
}

SymmetricSetFunction read_symmetric(std::istream& is) {
  std::vector<int> sizes;
  for (const std::string& tok : split(expect_prefixed(is, "blocks="), ','))
    sizes.push_back(std::stoi(tok));
  BlockStructure blocks(sizes);
  std::string rule = expect_prefixed(is, "rule=");
  if (rule == "fkn") return SymmetricSetFunction::three_class(std::move(blocks));
  if (rule != "table")
    throw std::invalid_argument("symmetric-function file: unknown rule '" + rule + "'");

  const std::uint64_t space = blocks.profile_space_saturated();
  if (space > 10'000'000)
    throw std::invalid_argument("symmetric-function file: profile table too large");
  std::vector<Rational> table(space);
  std::vector<bool> seen(space, false);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto space_pos = line.find(' ');
    if (space_pos == std::string::npos)
      throw std::invalid_argument("symmetric-function file: bad table line '" + line + "'");
    Profile p = Profile::parse(line.substr(0, space_pos), blocks.block_count());
    std::size_t idx = 0;
    for (int j = 0; j < blocks.block_count(); ++j) {
      if (p.counts[j] > blocks.sizes[j])
        throw std::invalid_argument("symmetric-function file: profile out of range '" + line + "'");
      idx = idx * (blocks.sizes[j] + 1) + p.counts[j];
    }
    table[idx] = Rational::parse(line.substr(space_pos + 1));
    seen[idx] = true;
  }
  for (std::size_t i = 0; i < space; ++i)
    if (!seen[i])
      throw std::invalid_argument("symmetric-function file: table must cover every profile");
  return SymmetricSetFunction::table(std::move(blocks), std::move(table));
}

AnyFunction read_function_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open '" + path + "'");
  int first = is.peek();
  if (first == 'b') return read_symmetric(is);
  return read_set_function(is);
}

void write_function_file(const std::string& path, const AnyFunction& f) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open '" + path + "' for writing");
  if (std::holds_alternative<SetFunction>(f))
    write_set_function(os, std::get<SetFunction>(f));
  else
    write_symmetric(os, std::get<SymmetricSetFunction>(f));
}

void write_certificate(std::ostream& os, const DistanceCertificate& cert) {
  os << "optimum=" << cert.optimum.str() << "\n";
  os << "atoms=";
  for (int i = 0; i < cert.measure.m(); ++i) os << (i ? "," : "") << cert.measure.atom(i).str();
  os << "\n";
  for (const DualEntry& e : cert.dual_weights)
    os << "dual " << key_str(e.key) << " " << (e.sign > 0 ? '+' : '-') << " " << e.weight.str()
       << "\n";
}

DistanceCertificate read_certificate(std::istream& is, const AnyFunction& f) {
  const bool dense = std::holds_alternative<SetFunction>(f);
  const int m = dense ? std::get<SetFunction>(f).m()
                      : std::get<SymmetricSetFunction>(f).blocks().ground_size();

  Rational optimum = Rational::parse(expect_prefixed(is, "optimum="));
  std::vector<Rational> atoms;
  for (const std::string& tok : split(expect_prefixed(is, "atoms="), ','))
    atoms.push_back(Rational::parse(tok));
  if (static_cast<int>(atoms.size()) != m)
    throw std::invalid_argument("certificate: expected " + std::to_string(m) + " atom weights");

  DistanceCertificate cert{optimum, Measure(GroundSet(m), std::move(atoms)), {}, {}};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto parts = split(line, ' ');
    if (parts.size() != 4 || parts[0] != "dual" || (parts[2] != "+" && parts[2] != "-"))
      throw std::invalid_argument("certificate: bad dual line '" + line + "'");
    ConstraintKey key = dense ? ConstraintKey(parse_subset_hex(parts[1], m))
                              : ConstraintKey(Profile::parse(
                                    parts[1], std::get<SymmetricSetFunction>(f).blocks().block_count()));
    cert.dual_weights.push_back({key, parts[2] == "+" ? +1 : -1, Rational::parse(parts[3])});
  }

  // Active sets are not serialized; reconstruct the attaining constraints.
  if (dense) {
    const SetFunction& sf = std::get<SetFunction>(f);
    for (Subset a = 0; a < sf.table_size(); ++a)
      if (abs(sf.value(a) - cert.measure(a)) == cert.optimum) cert.active_sets.emplace_back(a);
  } else {
    const SymmetricSetFunction& sf = std::get<SymmetricSetFunction>(f);
    if (sf.profile_space() <= 10'000'000) {
      Profile p(std::vector<int>(sf.blocks().block_count(), 0));
      do {
        Rational dot;
        for (int j = 0; j < p.size(); ++j)
          if (p.counts[j] != 0)
            dot += Rational(p.counts[j]) * cert.measure.atom(sf.blocks().block_offset(j));
        if (abs(sf.value(p) - dot) == cert.optimum) cert.active_sets.emplace_back(p);
      } while (next_profile(sf.blocks(), p));
    } else {
      for (const DualEntry& e : cert.dual_weights) cert.active_sets.push_back(e.key);
    }
  }
  return cert;
}

void write_search_csv(std::ostream& os, const SearchResult& result) {
  os << "a11,a12,a13,a21,a22,a23,a31,a32,a33,distance,distance_dec,survivor\n";
  for (const RankedCandidate& rc : result.ranked) {
    for (const Rational& e : rc.matrix.a) os << e.str() << ",";
    os << rc.certificate.optimum.str() << "," << rc.certificate.optimum.decimal() << ","
       << (rc.survivor ? 1 : 0) << "\n";
  }
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows) {
  os << "k,n,m,a_formula,a_formula_dec,lp_distance,best_lower,kw_lower,ks_lower\n";
  for (const BoundRow& r : rows) {
    os << r.k << "," << r.n << "," << r.m << "," << r.a_formula.str() << ","
       << r.a_formula.decimal() << "," << (r.lp_distance ? r.lp_distance->str() : "") << ","
       << r.best_lower.str() << "," << r.kw_lower.str() << "," << r.ks_lower.str() << "\n";
  }
}

std::vector<BoundRow> read_bounds_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) ||
      header != "k,n,m,a_formula,a_formula_dec,lp_distance,best_lower,kw_lower,ks_lower")
    throw std::invalid_argument("bounds csv: bad header");
  std::vector<BoundRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 9) throw std::invalid_argument("bounds csv: bad row '" + line + "'");
    BoundRow r;
    r.k = std::stoi(fields[0]);
    r.n = std::stoi(fields[1]);
    r.m = std::stoi(fields[2]);
    r.a_formula = Rational::parse(fields[3]);
    if (!fields[5].empty()) r.lp_distance = Rational::parse(fields[5]);
    r.best_lower = Rational::parse(fields[6]);
    r.kw_lower = Rational::parse(fields[7]);
    r.ks_lower = Rational::parse(fields[8]);
    r.lp_below_formula = r.lp_distance && *r.lp_distance < r.a_formula;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace kalton::io
