#pragma once

// Discrete Conduché conditions: table checks on finite functors, fiber
// checks through the induced word map, movement lifting and rigidity.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyconduche/category.hpp"
#include "polyconduche/movement.hpp"
#include "polyconduche/term.hpp"

namespace polyconduche {

struct ConducheFailure {
  enum Kind { NoLift, NonUniqueLift, KappaFail };
  Kind kind = NoLift;
  unsigned n = 0;  // level of x
  unsigned k = 0;
  CellIndex x = kNone;
  // Factorization f(x) = y1 *k y2, or for KappaFail f(x) = 1(y1) with y1 a k-cell.
  CellIndex y1 = kNone;
  CellIndex y2 = kNone;
  std::vector<std::pair<CellIndex, CellIndex>> lifts;  // first two lifts when not unique
};

const char* to_string(ConducheFailure::Kind k);

struct ConducheReport {
  enum Verdict { Pass, Fail, Unknown };
  Verdict verdict = Pass;
  std::vector<ConducheFailure> failures;

  bool ok() const { return verdict == Pass; }
  void add(ConducheFailure f);
  void merge(const ConducheReport& other);
};

const char* to_string(ConducheReport::Verdict v);

/// Orthogonality to the codiagonal at (n, k): every factorization of f(x)
/// read off the target table lifts to exactly one factorization of x.
ConducheReport check_nabla(const OmegaFunctor& f, unsigned n, unsigned k);
/// Orthogonality to the identity map at (n, k): f(x) = 1(y) forces
/// x = 1(x') with f(x') = y.
ConducheReport check_kappa(const OmegaFunctor& f, unsigned n, unsigned k);
/// Both conditions at level n for every k < n.
ConducheReport check_level(const OmegaFunctor& f, unsigned n);
/// All levels 1..up_to_dim; defaults to the source dimension.
ConducheReport check_conduche(const OmegaFunctor& f, std::optional<unsigned> up_to_dim = std::nullopt);

/// Cells of the given level whose image lies in `cells`, in index order.
std::vector<CellIndex> preimage(const OmegaFunctor& f, unsigned level, const std::vector<CellIndex>& cells);

/// The morphism E_{f^-1(S)} -> E_S of extensions of the n-truncations,
/// for S a set of (n+1)-cells of the target.
ExtensionMorphism restrict_morphism(const OmegaFunctor& f, unsigned n, const std::vector<CellIndex>& sigma_d);

/// Token-wise relabelling c:a -> c:f(a), i:x -> i:f(x). Throws
/// UnknownGenerator on names outside the source extension.
Word induced_word_map(const ExtensionMorphism& f, const Word& w);
Term induced_term_map(const ExtensionMorphism& f, const Term& t);

struct FiberResult {
  enum Defect { None, NotInjective, NotSurjective };
  ConducheReport::Verdict verdict = ConducheReport::Pass;
  Defect defect = None;
  unsigned n = 0;                 // the fibers are over (n+1)-cells
  std::optional<CellIndex> cell;  // a, for finite functors
  // NotInjective: two source words with the same image.
  // NotSurjective: a target word with no preimage in the fiber.
  std::vector<std::string> witness;
  std::string image;
  std::size_t examined = 0;
  std::string note;
};

const char* to_string(FiberResult::Defect d);

struct FiberQuery {
  CellIndex a = kNone;            // an (n+1)-cell of the source; kNone for every cell
  unsigned n = 0;
  std::vector<CellIndex> sigma_d;  // (n+1)-cells of the target; its preimage is used upstairs
  std::size_t size_bound = 4;
};

/// Checks that the induced map T[S_C]_a -> T[S_D]_f(a) is bijective on
/// words of size at most the bound. Since the map preserves size this is
/// exact on each truncation; counts are computed compositionally.
FiberResult check_fiber_bijection(const OmegaFunctor& f, const FiberQuery& q);
/// The above with S_D = all (m+1)-cells, for every level m below both
/// dimensions; returns the first failing level.
FiberResult check_fibers(const OmegaFunctor& f, std::size_t size_bound);
/// Symbolic version over free categories: a is the class of `a`, fibers are
/// enumerated up to the bound and membership is decided with equivalent().
FiberResult check_fiber_bijection(const ExtensionMorphism& f, const Term& a, std::size_t size_bound,
                                  const SearchBounds& bounds = {});

/// Lifts a movement out of f~(u) to a movement out of u with the same case,
/// position and image. Throws NotLiftable when no lift exists, Stale when
/// f~(u) is not the input of mu.
MovementStep lift_movement(const ExtensionMorphism& f, const ElementaryMovement& mu, const Term& u);

/// f maps each sigma_c[k] into sigma_d[k].
bool is_rigid(const OmegaFunctor& f, const std::vector<std::vector<CellIndex>>& sigma_c,
              const std::vector<std::vector<CellIndex>>& sigma_d);
/// Generators go to generators by construction; the base functor must send
/// indecomposable cells to indecomposable cells.
bool is_rigid(const ExtensionMorphism& f);

}  // namespace polyconduche
