#pragma once

// Deterministic collection of finite functors shared by the property tests
// and the acceptance runner.

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyconduche/category.hpp"
#include "polyconduche/constructions.hpp"
#include "polyconduche/fixtures.hpp"
#include "polyconduche/movement.hpp"

namespace corpus {

using namespace polyconduche;

struct Entry {
  std::string name;
  OmegaFunctor f;
};

// Sends every cell to the iterated identity on the single object.
inline OmegaFunctor collapse(std::shared_ptr<const PresentedCategory> c) {
  auto t = std::make_shared<const PresentedCategory>(terminal_category(c->dimension()));
  OmegaFunctor f{c, t, {}};
  for (unsigned l = 0; l <= c->dimension(); ++l) f.map.emplace_back(c->cell_count(l), 0);
  return f;
}

inline std::vector<Entry> functors(std::uint64_t seed = 1234, int random_rounds = 12) {
  std::vector<Entry> out;
  std::mt19937_64 rng(seed);
  auto arrow = std::make_shared<const PresentedCategory>(arrow_category());
  auto loop = std::make_shared<const PresentedCategory>(loop_category());
  out.push_back({"identity(arrow)", identity_functor(arrow)});
  out.push_back({"collapse(arrow)", collapse(arrow)});
  out.push_back({"arrow->loop",
                 functor_from_names(arrow, loop, {{{"x", "star"}, {"y", "star"}},
                                                  {{"id_x", "id_star"}, {"id_y", "id_star"}, {"u", "e"}}})});
  out.push_back({"slice(arrow,y)", slice_1cat(arrow, "y").projection});

  auto pp = std::make_shared<const PresentedCategory>(parallel_pair_category());
  out.push_back({"identity(parallel_pair)", identity_functor(pp)});
  out.push_back({"collapse(parallel_pair)", collapse(pp)});
  auto g2 = std::make_shared<const PresentedCategory>(globe(2));
  out.push_back({"collapse(globe2)", collapse(g2)});
  auto idem = std::make_shared<const PresentedCategory>(idem_category());
  out.push_back({"identity(idem)", identity_functor(idem)});

  for (int i = 0; i < random_rounds; ++i) {
    auto a = std::make_shared<const PresentedCategory>(random_1category(rng, 4, 10));
    auto b = std::make_shared<const PresentedCategory>(random_1category(rng, 4, 10));
    const std::string tag = std::to_string(i);
    out.push_back({"random" + tag, random_functor(rng, a, b)});
    const std::string obj = a->name(0, static_cast<CellIndex>(rng() % a->cell_count(0)));
    SliceResult s = slice_1cat(a, obj);
    out.push_back({"slice" + tag, s.projection});
    OmegaFunctor g = random_functor(rng, b, a);
    PullbackResult p = pullback(s.projection, g);
    out.push_back({"pullback" + tag, p.proj2});
    out.push_back({"raised_slice" + tag, equalize_dimensions(s.projection, 2)});
  }
  return out;
}

}  // namespace corpus
