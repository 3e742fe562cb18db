#include "polyconduche/category.hpp"

#include <algorithm>

#include "polyconduche/errors.hpp"

namespace polyconduche {

namespace {

std::uint64_t key(CellIndex x, CellIndex y) { return (static_cast<std::uint64_t>(x) << 32) | y; }

const std::vector<std::pair<CellIndex, CellIndex>> kNoPairs;

}  // namespace

PresentedCategory::PresentedCategory(unsigned dimension)
    : dimension_(dimension), levels_(dimension + 1), tables_((dimension + 1) * (dimension + 1)) {}

std::size_t PresentedCategory::total_cells() const {
  std::size_t n = 0;
  for (const auto& lv : levels_) n += lv.names.size();
  return n;
}

CellIndex PresentedCategory::add_cell(unsigned level, std::string name) {
  if (level > dimension_) throw LevelError("cell level " + std::to_string(level) + " above dimension");
  Level& lv = levels_[level];
  auto idx = static_cast<CellIndex>(lv.names.size());
  if (!lv.by_name.emplace(name, idx).second)
    throw SchemaError("duplicate cell '" + name + "' at level " + std::to_string(level));
  lv.names.push_back(std::move(name));
  lv.src.push_back(kNone);
  lv.tgt.push_back(kNone);
  lv.id.push_back(kNone);
  return idx;
}

void PresentedCategory::check_cell(unsigned level, CellIndex x) const {
  if (level > dimension_ || x >= levels_[level].names.size())
    throw SchemaError("cell index " + std::to_string(x) + " out of range at level " + std::to_string(level));
}

void PresentedCategory::set_boundary(unsigned level, CellIndex x, CellIndex source, CellIndex target) {
  if (level == 0) throw LevelError("0-cells have no boundary");
  check_cell(level, x);
  check_cell(level - 1, source);
  check_cell(level - 1, target);
  levels_[level].src[x] = source;
  levels_[level].tgt[x] = target;
}

void PresentedCategory::set_identity(unsigned level, CellIndex x, CellIndex identity) {
  if (level >= dimension_) throw LevelError("no identities above the top dimension");
  check_cell(level, x);
  check_cell(level + 1, identity);
  levels_[level].id[x] = identity;
}

PresentedCategory::Table& PresentedCategory::table(unsigned l, unsigned k) {
  if (k >= l || l > dimension_)
    throw LevelError("no composition table for *" + std::to_string(k) + " at level " + std::to_string(l));
  return tables_[l * (dimension_ + 1) + k];
}

const PresentedCategory::Table& PresentedCategory::table(unsigned l, unsigned k) const {
  if (k >= l || l > dimension_)
    throw LevelError("no composition table for *" + std::to_string(k) + " at level " + std::to_string(l));
  return tables_[l * (dimension_ + 1) + k];
}

void PresentedCategory::set_composite(unsigned l, unsigned k, CellIndex x, CellIndex y, CellIndex r) {
  check_cell(l, x);
  check_cell(l, y);
  check_cell(l, r);
  Table& t = table(l, k);
  auto [it, inserted] = t.rows.emplace(key(x, y), r);
  if (!inserted) {
    if (it->second != r)
      throw SchemaError("conflicting composite " + name(l, x) + " *" + std::to_string(k) + " " + name(l, y));
    return;
  }
  if (t.by_result.size() <= r) t.by_result.resize(r + 1);
  if (t.by_left.size() <= x) t.by_left.resize(x + 1);
  t.by_result[r].emplace_back(x, y);
  t.by_left[x].emplace_back(y, r);
}

std::optional<CellIndex> PresentedCategory::find(unsigned level, std::string_view n) const {
  if (level > dimension_) return std::nullopt;
  const auto& m = levels_[level].by_name;
  auto it = m.find(std::string(n));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

CellIndex PresentedCategory::index(unsigned level, std::string_view n) const {
  auto r = find(level, n);
  if (!r) throw SchemaError("unknown cell '" + std::string(n) + "' at level " + std::to_string(level));
  return *r;
}

CellIndex PresentedCategory::boundary(unsigned level, CellIndex x, unsigned k, Side side) const {
  if (k >= level) throw LevelError("boundary level " + std::to_string(k) + " not below " + std::to_string(level));
  x = side == Side::Source ? src(level, x) : tgt(level, x);
  for (unsigned l = level - 1; l > k; --l) x = side == Side::Source ? src(l, x) : tgt(l, x);
  return x;
}

CellIndex PresentedCategory::identity_to(unsigned from, CellIndex x, unsigned to) const {
  if (to < from || to > dimension_) throw LevelError("identity level out of range");
  for (unsigned l = from; l < to; ++l) x = id(l, x);
  return x;
}

std::optional<CellIndex> PresentedCategory::comp(unsigned l, unsigned k, CellIndex x, CellIndex y) const {
  const Table& t = table(l, k);
  auto it = t.rows.find(key(x, y));
  if (it == t.rows.end()) return std::nullopt;
  return it->second;
}

std::vector<CompEntry> PresentedCategory::entries(unsigned l, unsigned k) const {
  const Table& t = table(l, k);
  std::vector<CompEntry> out;
  out.reserve(t.rows.size());
  for (const auto& [kk, r] : t.rows)
    out.push_back({static_cast<CellIndex>(kk >> 32), static_cast<CellIndex>(kk & 0xffffffffu), r});
  std::sort(out.begin(), out.end());
  return out;
}

std::span<const std::pair<CellIndex, CellIndex>> PresentedCategory::factorizations(unsigned l, unsigned k,
                                                                                  CellIndex r) const {
  const Table& t = table(l, k);
  return r < t.by_result.size() ? std::span(t.by_result[r]) : std::span(kNoPairs);
}

std::span<const std::pair<CellIndex, CellIndex>> PresentedCategory::right_partners(unsigned l, unsigned k,
                                                                                  CellIndex x) const {
  const Table& t = table(l, k);
  return x < t.by_left.size() ? std::span(t.by_left[x]) : std::span(kNoPairs);
}

bool PresentedCategory::composable(unsigned l, unsigned k, CellIndex x, CellIndex y) const {
  return boundary(l, x, k, Side::Source) == boundary(l, y, k, Side::Target);
}

void PresentedCategory::check_schema() const {
  for (unsigned l = 0; l <= dimension_; ++l) {
    for (CellIndex x = 0; x < cell_count(l); ++x) {
      if (l > 0 && (src(l, x) == kNone || tgt(l, x) == kNone))
        throw SchemaError("missing source or target for '" + name(l, x) + "' at level " + std::to_string(l));
      if (l < dimension_ && id(l, x) == kNone)
        throw SchemaError("missing identity for '" + name(l, x) + "' at level " + std::to_string(l));
    }
  }
}

bool operator==(const PresentedCategory& a, const PresentedCategory& b) {
  if (a.dimension_ != b.dimension_) return false;
  for (unsigned l = 0; l <= a.dimension_; ++l) {
    const auto& x = a.levels_[l];
    const auto& y = b.levels_[l];
    if (x.names != y.names || x.src != y.src || x.tgt != y.tgt || x.id != y.id) return false;
  }
  for (unsigned l = 1; l <= a.dimension_; ++l)
    for (unsigned k = 0; k < l; ++k)
      if (a.entries(l, k) != b.entries(l, k)) return false;
  return true;
}

}  // namespace polyconduche
