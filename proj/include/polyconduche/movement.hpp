#pragma once

// Elementary movements between terms, bounded equivalence search with
// replayable witnesses, and the free category of a cellular extension.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyconduche/category.hpp"
#include "polyconduche/term.hpp"

namespace polyconduche {

enum class Direction { Forward, Backward, Both };

const char* to_string(Direction d);

/// One rewrite step v e w -> v e' w. Cases: 1 associativity, 2 left unit,
/// 3 right unit, 4 identity merge, 5 interchange.
struct ElementaryMovement {
  Word prefix;
  Word suffix;
  Term redex;       // subterm of the input
  Term contractum;  // subterm of the output
  int movement_case = 0;
  Direction direction = Direction::Forward;

  Word input() const { return concat(prefix, redex.word(), suffix); }
  Word output() const { return concat(prefix, contractum.word(), suffix); }
};

struct MovementStep {
  ElementaryMovement movement;
  Term result;
};

/// All movements out of t in (case, position) order. Forward movements
/// apply the rules left to right, backward ones right to left, including
/// unit insertion at every subterm and every level.
std::vector<MovementStep> enumerate_movements(const Term& t, Direction direction = Direction::Both);

/// Throws Stale if t is not prefix + redex + suffix.
Term apply_movement(const Term& t, const ElementaryMovement& m);

/// Applies forward unit eliminations and identity merges, leftmost
/// innermost, until none applies.
Term reduce(const Term& t);

struct SearchBounds {
  std::size_t size_slack = 3;
  std::size_t max_steps = 64;
  std::size_t max_visited = 200000;
};

struct EquivalenceWitness {
  Term from;
  Term to;
  std::vector<ElementaryMovement> path;
};

struct EquivalenceResult {
  enum Verdict { Witness, Distinct, Unknown };
  Verdict verdict = Unknown;
  std::optional<EquivalenceWitness> witness;
  std::string reason;
  std::size_t visited = 0;
};

const char* to_string(EquivalenceResult::Verdict v);

/// Bounded bidirectional breadth-first search in the movement graph.
/// Distinct is only returned for differing n-boundaries or generator
/// multisets; exhausting the bounds gives Unknown.
EquivalenceResult equivalent(const Term& u, const Term& v, const SearchBounds& bounds = {});

/// Replays a witness; returns false on the first step that does not apply.
bool replay_witness(const EquivalenceWitness& w);

/// n-source or n-target of the class of t.
CellIndex class_boundary(const Term& t, Side side);
/// Representative "(t1 *k t2)" of the composite class; throws
/// BoundaryMismatch when the classes are not composable.
Term compose_classes(const Term& t1, unsigned k, const Term& t2);

/// The (n+1)-functor out of the free category of E induced by a functor on
/// the base and an assignment of the generators, evaluated on a term.
/// `base` must map into the n-truncation of D with the same cell indices.
CellIndex extend_functor(const CellularExtension& e, const PresentedCategory& d, const OmegaFunctor& base,
                         const std::vector<CellIndex>& phi, const Term& t);

/// Hash-consed terms kept in a unit-reduced, right-associated form.
/// Equal ids imply equivalent terms; the converse holds for extensions of
/// 0-categories only.
class NormalFormStore {
 public:
  using Id = std::uint32_t;

  explicit NormalFormStore(ExtensionPtr e);

  Id generator(std::size_t g);
  Id identity(CellIndex c);
  /// nullopt when the pair is not composable at k.
  std::optional<Id> comp(Id a, unsigned k, Id b);
  Id normalize(const Term& t);

  Word word(Id x) const;
  Term term(Id x) const { return check_term(ext_, word(x)); }
  CellIndex src(Id x) const { return nodes_[x].src; }
  CellIndex tgt(Id x) const { return nodes_[x].tgt; }
  std::size_t size(Id x) const { return nodes_[x].size; }
  std::vector<std::uint32_t> multiset(Id x) const;
  std::size_t count() const { return nodes_.size(); }
  const CellularExtension& extension() const { return *ext_; }

 private:
  struct Node {
    TermNode::Kind kind;
    std::uint32_t payload;
    Id left, right;
    CellIndex src, tgt;
    std::uint32_t size;
  };
  Id intern(const Node& n);
  bool is_identity(Id x) const { return nodes_[x].kind == TermNode::Id; }
  CellIndex bound(CellIndex x, unsigned k, Side side) const;

  ExtensionPtr ext_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::vector<Id>> buckets_;
};

/// Materializes the free (n+1)-category of E as a finite table. Throws
/// Error if it has more than max_cells top cells or if two candidate classes
/// cannot be separated or identified within the search bounds.
PresentedCategory free_category(const ExtensionPtr& e, std::size_t max_cells = 512, const SearchBounds& bounds = {});

/// The n-globe, built as iterated free categories. Level j < n has cells
/// s<j>, t<j> plus identities; the top cell is g.
PresentedCategory globe(unsigned n);
/// Two n-globes x, y glued with s^k(x) = t^k(y); the middle k-cell is m<k>.
PresentedCategory composable_pair(unsigned n, unsigned k);

}  // namespace polyconduche
