#include <catch_amalgamated.hpp>

#include <set>

#include "polyconduche/conduche.hpp"
#include "polyconduche/constructions.hpp"
#include "polyconduche/errors.hpp"
#include "polyconduche/fixtures.hpp"
#include "polyconduche/movement.hpp"

using namespace polyconduche;

namespace {

std::shared_ptr<const PresentedCategory> shared(PresentedCategory c) {
  return std::make_shared<const PresentedCategory>(std::move(c));
}

std::set<std::string> level_names(const PresentedCategory& c, unsigned level) {
  std::set<std::string> out;
  for (CellIndex x = 0; x < c.cell_count(level); ++x) out.insert(c.name(level, x));
  return out;
}

// Cells of the apex over (a, b), found by scanning every cell.
int cells_over(const PullbackResult& p, unsigned level, CellIndex a, CellIndex b) {
  int n = 0;
  for (CellIndex z = 0; z < p.apex->cell_count(level); ++z) n += p.proj1(level, z) == a && p.proj2(level, z) == b;
  return n;
}

// Number of pairs (x, y) with f(x) = g(y) at a level.
std::size_t matching_pairs(const OmegaFunctor& f, const OmegaFunctor& g, unsigned level) {
  std::size_t n = 0;
  for (CellIndex x = 0; x < f.source->cell_count(level); ++x)
    for (CellIndex y = 0; y < g.source->cell_count(level); ++y) n += f(level, x) == g(level, y);
  return n;
}

}  // namespace

TEST_CASE("slice of the arrow category") {
  auto arrow = shared(arrow_category());
  SliceResult at_y = slice_1cat(arrow, "y");
  REQUIRE(validate_category(*at_y.category).ok());
  REQUIRE(validate_functor(at_y.projection).ok());
  CHECK(level_names(*at_y.category, 0) == std::set<std::string>{"id_y", "u"});
  CHECK(level_names(*at_y.category, 1) == std::set<std::string>{"id_x|u", "id_y|id_y", "u|id_y"});
  const auto& s = *at_y.category;
  CellIndex m = s.index(1, "u|id_y");
  CHECK(s.name(0, s.src(1, m)) == "u");
  CHECK(s.name(0, s.tgt(1, m)) == "id_y");
  CHECK(at_y.projection(1, m) == arrow->index(1, "u"));
  CHECK(at_y.projection(0, s.index(0, "u")) == arrow->index(0, "x"));

  SliceResult at_x = slice_1cat(arrow, "x");
  CHECK(at_x.category->cell_count(0) == 1);
  CHECK(at_x.category->cell_count(1) == 1);
}

TEST_CASE("slice preconditions") {
  CHECK_THROWS_AS(slice_1cat(shared(arrow_category()), "w"), UnknownObject);
  CHECK_THROWS_AS(slice_1cat(shared(parallel_pair_category()), "x"), SchemaError);
  CHECK_THROWS_AS(slice_1cat(shared(terminal_category(0)), "star"), SchemaError);
}

TEST_CASE("slices are categories with Conduché projections") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 40; ++i) {
    auto c = shared(random_1category(rng, 5, 12));
    for (CellIndex o = 0; o < c->cell_count(0); ++o) {
      SliceResult s = slice_1cat(c, c->name(0, o));
      INFO(c->name(0, o));
      REQUIRE(validate_category(*s.category).ok());
      REQUIRE(validate_functor(s.projection).ok());
      // Objects are the arrows into o.
      std::size_t into = 0;
      for (CellIndex h = 0; h < c->cell_count(1); ++h) into += c->tgt(1, h) == o;
      CHECK(s.category->cell_count(0) == into);
      CHECK(check_conduche(s.projection).ok());
    }
  }
}

TEST_CASE("pullback along the identity") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    auto c = shared(random_1category(rng, 4, 10));
    auto d = shared(random_1category(rng, 4, 10));
    OmegaFunctor f = random_functor(rng, c, d);
    PullbackResult p = pullback(f, identity_functor(d));
    REQUIRE(validate_category(*p.apex).ok());
    for (unsigned l = 0; l <= 1; ++l) CHECK(p.apex->cell_count(l) == c->cell_count(l));
    CHECK(validate_functor(p.proj1).ok());
    CHECK(validate_functor(p.proj2).ok());
  }
  auto arrow = shared(arrow_category());
  PullbackResult p = pullback(identity_functor(arrow), identity_functor(arrow));
  CHECK(level_names(*p.apex, 0) == std::set<std::string>{"x|x", "y|y"});
}

TEST_CASE("pullback rejects functors into different targets") {
  auto arrow = shared(arrow_category());
  auto loop = shared(loop_category());
  CHECK_THROWS_AS(pullback(identity_functor(arrow), identity_functor(loop)), SchemaError);
}

TEST_CASE("pullbacks have the universal property") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 25; ++i) {
    auto c = shared(random_1category(rng, 4, 9));
    auto d = shared(random_1category(rng, 4, 9));
    OmegaFunctor f = random_functor(rng, c, d);
    SliceResult s = slice_1cat(d, d->name(0, static_cast<CellIndex>(rng() % d->cell_count(0))));
    const OmegaFunctor& g = s.projection;
    PullbackResult p = pullback(f, g);
    REQUIRE(validate_category(*p.apex).ok());
    for (unsigned l = 0; l <= 1; ++l) CHECK(p.apex->cell_count(l) == matching_pairs(f, g, l));

    // Every cone has exactly one candidate cell per cell of its apex.
    auto check_cone = [&](const OmegaFunctor& h1, const OmegaFunctor& h2) {
      for (unsigned l = 0; l <= 1; ++l)
        for (CellIndex x = 0; x < h1.source->cell_count(l); ++x) CHECK(cells_over(p, l, h1(l, x), h2(l, x)) == 1);
      OmegaFunctor m = mediating_functor(p, f, g, h1, h2);
      CHECK(validate_functor(m).ok());
      CHECK(compose(p.proj1, m).map == h1.map);
      CHECK(compose(p.proj2, m).map == h2.map);
    };
    check_cone(p.proj1, p.proj2);

    // The diagonal cone into the kernel pair of g.
    PullbackResult diag = pullback(g, g);
    OmegaFunctor m = mediating_functor(diag, g, g, identity_functor(g.source), identity_functor(g.source));
    CHECK(validate_functor(m).ok());

    // A cone that does not commute.
    if (g.source->cell_count(0) > 1 || c->cell_count(0) > 1) {
      bool commutes = true;
      OmegaFunctor h1 = identity_functor(c);
      for (CellIndex x = 0; x < c->cell_count(0) && commutes; ++x)
        commutes = f(0, x) == g(0, 0);
      if (!commutes) {
        OmegaFunctor h2{c, g.source, {std::vector<CellIndex>(c->cell_count(0), 0),
                                      std::vector<CellIndex>(c->cell_count(1), g.source->id(0, 0))}};
        CHECK_THROWS_AS(mediating_functor(p, f, g, h1, h2), SchemaError);
      }
    }
  }
}

TEST_CASE("Conduché functors are stable under pullback") {
  std::mt19937_64 rng(67);
  int stable = 0;
  for (int i = 0; i < 30; ++i) {
    auto c = shared(random_1category(rng, 4, 9));
    auto d = shared(random_1category(rng, 4, 9));
    OmegaFunctor f = random_functor(rng, c, d);
    OmegaFunctor g = slice_1cat(d, d->name(0, static_cast<CellIndex>(rng() % d->cell_count(0)))).projection;
    REQUIRE(check_conduche(g).ok());
    PullbackResult p = pullback(f, g);
    // proj1 is the pullback of g along f.
    CHECK(check_conduche(p.proj1).ok());
    ++stable;
  }
  CHECK(stable == 30);

  auto pp = shared(parallel_pair_category());
  PullbackResult p = pullback(identity_functor(pp), identity_functor(pp));
  REQUIRE(validate_category(*p.apex).ok());
  CHECK(check_conduche(p.proj1).ok());
}
