#pragma once

// Finite strict n-categories given by explicit tables, and functors between
// them. Only codimension-1 source/target maps are stored; iterated
// boundaries are derived on demand.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace polyconduche {

using CellIndex = std::uint32_t;
inline constexpr CellIndex kNone = std::numeric_limits<CellIndex>::max();

enum class Side { Source, Target };

/// (left, right, result) row of a composition table.
struct CompEntry {
  CellIndex left = kNone;
  CellIndex right = kNone;
  CellIndex result = kNone;
  friend bool operator==(const CompEntry&, const CompEntry&) = default;
  friend auto operator<=>(const CompEntry&, const CompEntry&) = default;
};

class PresentedCategory {
 public:
  explicit PresentedCategory(unsigned dimension = 0);

  unsigned dimension() const { return dimension_; }
  std::size_t cell_count(unsigned level) const { return levels_.at(level).names.size(); }
  std::size_t total_cells() const;

  /// Appends a cell; boundaries and identities are filled in separately.
  /// Throws SchemaError on a duplicate name within the level.
  CellIndex add_cell(unsigned level, std::string name);
  void set_boundary(unsigned level, CellIndex x, CellIndex source, CellIndex target);
  /// id: level -> level + 1.
  void set_identity(unsigned level, CellIndex x, CellIndex identity);
  /// Records x *_k y = r among cells of level l. Re-entering the same row is
  /// a no-op; a conflicting row throws SchemaError.
  void set_composite(unsigned l, unsigned k, CellIndex x, CellIndex y, CellIndex r);

  const std::string& name(unsigned level, CellIndex x) const { return levels_.at(level).names.at(x); }
  std::optional<CellIndex> find(unsigned level, std::string_view name) const;
  /// Throws SchemaError on unknown names.
  CellIndex index(unsigned level, std::string_view name) const;

  /// Codimension-1 maps; kNone when unset.
  CellIndex src(unsigned level, CellIndex x) const { return levels_.at(level).src.at(x); }
  CellIndex tgt(unsigned level, CellIndex x) const { return levels_.at(level).tgt.at(x); }
  CellIndex id(unsigned level, CellIndex x) const { return levels_.at(level).id.at(x); }

  /// k-dimensional source or target of a level-cell. Throws LevelError if
  /// k >= level.
  CellIndex boundary(unsigned level, CellIndex x, unsigned k, Side side) const;
  /// 1^to_from(x); from == to returns x.
  CellIndex identity_to(unsigned from, CellIndex x, unsigned to) const;

  std::optional<CellIndex> comp(unsigned l, unsigned k, CellIndex x, CellIndex y) const;
  /// All rows of comp[l][k], sorted.
  std::vector<CompEntry> entries(unsigned l, unsigned k) const;
  /// Pairs (x, y) with x *_k y = r.
  std::span<const std::pair<CellIndex, CellIndex>> factorizations(unsigned l, unsigned k, CellIndex r) const;
  /// Pairs (y, x *_k y) for a fixed left operand x.
  std::span<const std::pair<CellIndex, CellIndex>> right_partners(unsigned l, unsigned k, CellIndex x) const;
  bool composable(unsigned l, unsigned k, CellIndex x, CellIndex y) const;

  /// Throws SchemaError if some src/tgt/id entry is unset.
  void check_schema() const;

  friend bool operator==(const PresentedCategory& a, const PresentedCategory& b);

 private:
  struct Level {
    std::vector<std::string> names;
    std::unordered_map<std::string, CellIndex> by_name;
    std::vector<CellIndex> src, tgt, id;
  };
  struct Table {
    std::unordered_map<std::uint64_t, CellIndex> rows;
    std::vector<std::vector<std::pair<CellIndex, CellIndex>>> by_result;
    std::vector<std::vector<std::pair<CellIndex, CellIndex>>> by_left;
  };
  Table& table(unsigned l, unsigned k);
  const Table& table(unsigned l, unsigned k) const;
  void check_cell(unsigned level, CellIndex x) const;

  unsigned dimension_;
  std::vector<Level> levels_;
  std::vector<Table> tables_;  // indexed l * (dimension + 1) + k
};

struct Violation {
  std::string axiom;
  std::vector<std::string> witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of the globular identities, the identity laws and the
/// seven category axioms. Throws SchemaError on partial maps.
ValidationReport validate_category(const PresentedCategory& c);

bool is_degenerate(const PresentedCategory& c, unsigned level, CellIndex x);
PresentedCategory truncate(const PresentedCategory& c, unsigned n);
/// Adds identity-only levels up to the requested dimension. Each new cell
/// repeats the name of the cell it is the identity of.
PresentedCategory raise_dimension(const PresentedCategory& c, unsigned dimension);

struct OmegaFunctor {
  std::shared_ptr<const PresentedCategory> source;
  std::shared_ptr<const PresentedCategory> target;
  std::vector<std::vector<CellIndex>> map;  // map[level][cell]

  CellIndex operator()(unsigned level, CellIndex x) const { return map.at(level).at(x); }
  unsigned dimension() const { return source->dimension(); }
};

/// Checks src/tgt squares and preservation of identities and composites.
/// Throws SchemaError on partial maps or mismatched dimensions.
ValidationReport validate_functor(const OmegaFunctor& f);

OmegaFunctor identity_functor(std::shared_ptr<const PresentedCategory> c);
/// g after f.
OmegaFunctor compose(const OmegaFunctor& g, const OmegaFunctor& f);
/// Builds a functor from a name-level map; throws SchemaError on unknown or
/// missing names.
OmegaFunctor functor_from_names(std::shared_ptr<const PresentedCategory> source,
                                std::shared_ptr<const PresentedCategory> target,
                                const std::vector<std::map<std::string, std::string>>& map);
/// Raises both ends of a functor to a common dimension.
OmegaFunctor equalize_dimensions(const OmegaFunctor& f, unsigned dimension);

}  // namespace polyconduche
