#pragma once

// Fibred products of functors between presented categories, and slices of
// 1-categories over an object.

#include <memory>
#include <string>

#include "polyconduche/category.hpp"

namespace polyconduche {

struct PullbackResult {
  std::shared_ptr<const PresentedCategory> apex;
  OmegaFunctor proj1;  // apex -> source of f
  OmegaFunctor proj2;  // apex -> source of g
};

/// Cells are the pairs (x, y) with f(x) = g(y), named "x|y", ordered by
/// (x, y); everything else is computed componentwise. Functors of lower
/// dimension are raised to the largest dimension involved. Throws
/// SchemaError if f and g have different targets.
PullbackResult pullback(const OmegaFunctor& f, const OmegaFunctor& g);

/// The functor X -> apex induced by a cone (h1: X -> C, h2: X -> D).
/// Throws SchemaError if f h1 and g h2 differ on some cell.
OmegaFunctor mediating_functor(const PullbackResult& p, const OmegaFunctor& f, const OmegaFunctor& g,
                               const OmegaFunctor& h1, const OmegaFunctor& h2);

struct SliceResult {
  std::shared_ptr<const PresentedCategory> category;
  OmegaFunctor projection;
};

/// C/c for a 1-category C. Objects are the arrows h into c, named like h;
/// an arrow m|h' goes from h' *0 m to h'. The projection forgets h.
/// Throws UnknownObject for an unknown c and SchemaError unless C has
/// dimension 1.
SliceResult slice_1cat(std::shared_ptr<const PresentedCategory> c, const std::string& object);

}  // namespace polyconduche
