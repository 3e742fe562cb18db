#pragma once

// Small categories, extensions and functors used by the tests, the
// acceptance runner and the shipped example documents.

#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyconduche/category.hpp"
#include "polyconduche/term.hpp"

namespace polyconduche {

struct ArrowSpec {
  std::string name, source, target;
};

/// 1-category with the given objects and non-identity arrows. Identities are
/// named "id_<object>". `compose` maps (g, f) with s(g) = t(f) to g *0 f for
/// non-identity arrows; unit rows are added automatically. Pairs missing
/// from `compose` are left undefined (validation will report them).
PresentedCategory make_1category(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                                 const std::map<std::pair<std::string, std::string>, std::string>& compose);

/// Free category on a finite acyclic graph; composite arrows are named by
/// concatenating generator names, outermost first.
PresentedCategory path_category(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& generators);

/// x --u--> y
PresentedCategory arrow_category();
/// One object, its identity, and 2-cells {identity, g} with every composite
/// involving g equal to g.
PresentedCategory idem_category();
/// The terminal n-category: star, id_star, id_id_star, ...
PresentedCategory terminal_category(unsigned n);
/// Collapse of the arrow category onto one object with an idempotent loop e.
PresentedCategory loop_category();

/// Two generators a, b from id_star to id_star over the terminal 1-category.
ExtensionPtr eh_extension();
/// One generator c from id_star to id_star over the terminal 1-category.
ExtensionPtr eh_target_extension();
/// The rigid functor a, b |-> c between the free categories of the two
/// extensions above.
ExtensionMorphism eh_morphism();

/// Free 2-category on x, y, u, v: x -> y and gamma: u => v.
PresentedCategory parallel_pair_category();

/// Pseudo-random finite 1-category with at most `max_objects` objects and
/// `max_arrows` non-identity arrows: free categories on random acyclic
/// graphs, finite posets, small monoids and their disjoint unions.
PresentedCategory random_1category(std::mt19937_64& rng, unsigned max_objects = 5, unsigned max_arrows = 15);

/// Pseudo-random functor between finite 1-categories. Indecomposable arrows
/// are sent to random arrows and the assignment is extended along
/// factorizations; after repeated failures the constant functor on a random
/// object is returned.
OmegaFunctor random_functor(std::mt19937_64& rng, std::shared_ptr<const PresentedCategory> source,
                            std::shared_ptr<const PresentedCategory> target);

}  // namespace polyconduche
