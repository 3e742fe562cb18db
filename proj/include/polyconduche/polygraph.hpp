#pragma once

// Indecomposable cells, bases and freeness of finite presented categories,
// and transfer of bases along functors.

#include <optional>
#include <string>
#include <vector>

#include "polyconduche/category.hpp"
#include "polyconduche/movement.hpp"

namespace polyconduche {

/// One set of cells per dimension.
using CellSets = std::vector<std::vector<CellIndex>>;

/// Not degenerate, and every factorization x = x1 *k x2 has x1 = 1(t^k x)
/// or x2 = 1(s^k x). Every 0-cell qualifies.
bool is_indecomposable(const PresentedCategory& c, unsigned level, CellIndex x);
std::vector<CellIndex> indecomposables(const PresentedCategory& c, unsigned level);
CellSets indecomposables(const PresentedCategory& c);

struct BasisVerdict {
  enum Verdict { Basis, NotBasis, Unknown };
  enum Witness { None, MissingPreimage, DisconnectedPair };
  Verdict verdict = Basis;
  Witness witness = None;
  unsigned level = 0;
  CellIndex cell = kNone;  // the a of the witness
  std::string w1, w2;      // words for DisconnectedPair, or for the unresolved pair
  std::size_t size_bound = 0;
  std::vector<CellIndex> unresolved;  // cells whose preimages could not be connected
  std::string note;
};

const char* to_string(BasisVerdict::Verdict v);
const char* to_string(BasisVerdict::Witness w);

/// 2 x (number of non-identity cells at the level), capped at 8.
std::size_t default_basis_bound(const PresentedCategory& c, unsigned level);

/// Decides whether sigma is a basis of the given level. Level 0 compares
/// with the set of objects. Above, missing preimages are found by an exact
/// closure; connectivity is tested on normal forms of size at most the
/// bound, with equivalent() settling pairs that share their invariants.
BasisVerdict check_basis(const PresentedCategory& c, unsigned level, const std::vector<CellIndex>& sigma,
                         std::optional<std::size_t> size_bound = std::nullopt, const SearchBounds& bounds = {});

struct FreenessReport {
  std::vector<BasisVerdict> levels;
  std::vector<bool> matches_indecomposables;
  BasisVerdict::Verdict verdict = BasisVerdict::Basis;
};

/// check_basis at every level, plus the comparison of each sigma with the
/// indecomposable cells.
FreenessReport check_free(const PresentedCategory& c, const CellSets& sigma,
                          std::optional<std::size_t> size_bound = std::nullopt, const SearchBounds& bounds = {});

/// Level-wise preimages.
CellSets transfer_basis(const OmegaFunctor& f, const CellSets& sigma_d);
/// Level-wise images; throws NotSurjective unless every level of f is onto.
CellSets image_basis(const OmegaFunctor& f, const CellSets& sigma_c);

}  // namespace polyconduche
