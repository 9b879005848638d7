#include "kalton/core.hpp"

#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace kalton {

int popcount(Subset s) { return std::popcount(s); }

int dense_cap() {
  static const int cap = [] {
    int c = 24;
    if (const char* env = std::getenv("KALTON_GAP_MAX_M")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end && *end == '\0' && v >= 1 && v < c) c = static_cast<int>(v);
    }
    return c;
  }();
  return cap;
}

Subset GroundSet::full_mask() const {
  if (m > 31) throw std::invalid_argument("GroundSet: bitmask operations require m <= 31");
  return (Subset(1) << m) - 1;
}

BlockStructure::BlockStructure(std::vector<int> block_sizes) : sizes(std::move(block_sizes)) {
  if (sizes.empty()) throw std::invalid_argument("BlockStructure: need at least one block");
  for (int k : sizes)
    if (k < 1) throw std::invalid_argument("BlockStructure: block sizes must be >= 1");
}

BlockStructure BlockStructure::equal(int k, int n) {
  if (k < 1 || n < 1) throw std::invalid_argument("BlockStructure::equal: k, n must be >= 1");
  return BlockStructure(std::vector<int>(n, k));
}

int BlockStructure::ground_size() const {
  return std::accumulate(sizes.begin(), sizes.end(), 0);
}

int BlockStructure::block_offset(int j) const {
  int off = 0;
  for (int i = 0; i < j; ++i) off += sizes[i];
  return off;
}

Subset BlockStructure::block_mask(int j) const {
  if (ground_size() > 31) throw std::invalid_argument("BlockStructure: bitmask operations require m <= 31");
  Subset mask = (Subset(1) << sizes[j]) - 1;
  return mask << block_offset(j);
}

std::uint64_t BlockStructure::profile_space_saturated() const {
  std::uint64_t space = 1;
  for (int k : sizes) {
    std::uint64_t radix = static_cast<std::uint64_t>(k) + 1;
    if (space > UINT64_MAX / radix) return UINT64_MAX;
    space *= radix;
  }
  return space;
}

std::string Profile::str() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (j) os << ',';
    os << counts[j];
  }
  return os.str();
}

Profile Profile::parse(std::string_view text, int expected_blocks) {
  std::vector<int> counts;
  std::string token;
  std::istringstream is{std::string(text)};
  while (std::getline(is, token, ',')) {
    std::size_t pos = 0;
    int v = std::stoi(token, &pos);
    if (pos != token.size() || v < 0)
      throw std::invalid_argument("Profile::parse: bad profile '" + std::string(text) + "'");
    counts.push_back(v);
  }
  if (counts.empty() || (expected_blocks >= 0 && static_cast<int>(counts.size()) != expected_blocks))
    throw std::invalid_argument("Profile::parse: bad profile '" + std::string(text) + "'");
  return Profile(std::move(counts));
}

Profile profile_of(const BlockStructure& blocks, Subset a) {
  std::vector<int> counts(blocks.block_count());
  for (int j = 0; j < blocks.block_count(); ++j)
    counts[j] = popcount(a & blocks.block_mask(j));
  return Profile(std::move(counts));
}

Subset representative_subset(const BlockStructure& blocks, const Profile& p) {
  if (p.size() != blocks.block_count())
    throw std::invalid_argument("representative_subset: profile/block mismatch");
  Subset a = 0;
  for (int j = 0; j < blocks.block_count(); ++j) {
    int c = p.counts[j];
    if (c < 0 || c > blocks.sizes[j])
      throw std::invalid_argument("representative_subset: count out of range");
    Subset bits = (Subset(1) << c) - 1;
    a |= bits << blocks.block_offset(j);
  }
  return a;
}

SetFunction::SetFunction(GroundSet ground, std::vector<Rational> values)
    : ground_(ground), values_(std::move(values)) {
  if (ground_.m > dense_cap())
    throw std::invalid_argument("SetFunction: ground set exceeds dense cap m <= " +
                                std::to_string(dense_cap()));
  if (values_.size() != ground_.subset_count())
    throw std::invalid_argument("SetFunction: table must have exactly 2^m entries");
}

SetFunction SetFunction::zeros(GroundSet ground) {
  if (ground.m > dense_cap())
    throw std::invalid_argument("SetFunction: ground set exceeds dense cap m <= " +
                                std::to_string(dense_cap()));
  return SetFunction(ground, std::vector<Rational>(ground.subset_count()));
}

SymmetricSetFunction SymmetricSetFunction::table(BlockStructure blocks,
                                                 std::vector<Rational> profile_values) {
  std::uint64_t space = blocks.profile_space_saturated();
  if (space != profile_values.size())
    throw std::invalid_argument("SymmetricSetFunction: table must cover every profile");
  return SymmetricSetFunction(std::move(blocks), Rule::Table, std::move(profile_values));
}

SymmetricSetFunction SymmetricSetFunction::three_class(BlockStructure blocks) {
  return SymmetricSetFunction(std::move(blocks), Rule::ThreeClass, {});
}

Rational SymmetricSetFunction::value(const Profile& p) const {
  if (p.size() != blocks_.block_count())
    throw std::invalid_argument("SymmetricSetFunction::value: profile/block mismatch");
  if (rule_ == Rule::Table) return table_[profile_index(p)];
  bool all_touched = true, some_full = false, all_zero = true;
  for (int j = 0; j < p.size(); ++j) {
    int c = p.counts[j], k = blocks_.sizes[j];
    if (c < 0 || c > k) throw std::invalid_argument("SymmetricSetFunction::value: count out of range");
    if (c == 0) all_touched = false;
    if (c == k) some_full = true;
    if (c != 0) all_zero = false;
  }
  if (all_zero) return 0;
  if (all_touched && some_full) return 3;
  return 1;
}

std::size_t SymmetricSetFunction::profile_index(const Profile& p) const {
  std::size_t idx = 0;
  for (int j = 0; j < blocks_.block_count(); ++j) {
    idx = idx * (blocks_.sizes[j] + 1) + p.counts[j];
  }
  return idx;
}

Profile SymmetricSetFunction::profile_at(std::size_t index) const {
  int n = blocks_.block_count();
  std::vector<int> counts(n);
  for (int j = n - 1; j >= 0; --j) {
    std::size_t radix = blocks_.sizes[j] + 1;
    counts[j] = static_cast<int>(index % radix);
    index /= radix;
  }
  return Profile(std::move(counts));
}

Measure::Measure(GroundSet ground, std::vector<Rational> atom_weights)
    : ground_(ground), atoms_(std::move(atom_weights)) {
  if (atoms_.size() != static_cast<std::size_t>(ground_.m))
    throw std::invalid_argument("Measure: need exactly m atom weights");
}

Measure Measure::zeros(GroundSet ground) {
  return Measure(ground, std::vector<Rational>(ground.m));
}

Rational Measure::operator()(Subset a) const {
  Rational sum;
  while (a) {
    int i = std::countr_zero(a);
    sum += atoms_[i];
    a &= a - 1;
  }
  return sum;
}

SetFunction Measure::to_set_function() const {
  if (ground_.m > dense_cap())
    throw std::invalid_argument("Measure::to_set_function: ground set exceeds dense cap");
  std::vector<Rational> values(ground_.subset_count());
  for (Subset a = 1; a < values.size(); ++a) {
    int i = std::countr_zero(a);
    values[a] = values[a & (a - 1)] + atoms_[i];
  }
  return SetFunction(ground_, std::move(values));
}

SetFunction expand(const SymmetricSetFunction& sf) {
  const BlockStructure& blocks = sf.blocks();
  int m = blocks.ground_size();
  if (m > dense_cap())
    throw std::invalid_argument("expand: ground set too large for dense expansion (m <= " +
                                std::to_string(dense_cap()) + ")");
  GroundSet ground(m);
  std::vector<Rational> values(ground.subset_count());
  for (Subset a = 0; a < values.size(); ++a)
    values[a] = sf.value(profile_of(blocks, a));
  return SetFunction(ground, std::move(values));
}

SymmetricSetFunction symmetrize(const SetFunction& f, const BlockStructure& blocks) {
  if (blocks.ground_size() != f.m())
    throw std::invalid_argument("symmetrize: block structure does not match ground set");
  std::uint64_t space = blocks.profile_space_saturated();
  std::vector<Rational> table(space);
  Profile p(std::vector<int>(blocks.block_count(), 0));
  std::size_t idx = 0;
  do {
    table[idx++] = f.value(representative_subset(blocks, p));
  } while (next_profile(blocks, p));
  SymmetricSetFunction sf = SymmetricSetFunction::table(blocks, std::move(table));
  for (Subset a = 0; a < f.table_size(); ++a)
    if (f.value(a) != sf.value(profile_of(blocks, a)))
      throw std::invalid_argument("symmetrize: function is not block-invariant");
  return sf;
}

bool next_profile(const BlockStructure& blocks, Profile& p) {
  for (int j = blocks.block_count() - 1; j >= 0; --j) {
    if (p.counts[j] < blocks.sizes[j]) {
      ++p.counts[j];
      return true;
    }
    p.counts[j] = 0;
  }
  return false;
}

}  // namespace kalton
