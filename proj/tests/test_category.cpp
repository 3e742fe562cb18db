#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "polyconduche/errors.hpp"
#include "polyconduche/fixtures.hpp"
#include "polyconduche/movement.hpp"

using namespace polyconduche;

namespace {

bool has_tag(const ValidationReport& r, const std::string& tag) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.axiom == tag; });
}

std::size_t nondegenerate(const PresentedCategory& c, unsigned level) {
  std::size_t n = 0;
  for (CellIndex x = 0; x < c.cell_count(level); ++x) n += !is_degenerate(c, level, x);
  return n;
}

}  // namespace

TEST_CASE("arrow category validates") {
  PresentedCategory c = arrow_category();
  CHECK(validate_category(c).ok());
  CHECK(oracle::failed_axioms(c).empty());
  CHECK(c.boundary(1, c.index(1, "u"), 0, Side::Source) == c.index(0, "x"));
  CHECK(c.boundary(1, c.index(1, "u"), 0, Side::Target) == c.index(0, "y"));
  CHECK_THROWS_AS(c.boundary(1, c.index(1, "u"), 1, Side::Source), LevelError);
}

TEST_CASE("non-composable row is reported") {
  PresentedCategory c = make_1category({"x", "y"}, {{"u", "x", "y"}}, {{{"u", "u"}, "u"}});
  auto r = validate_category(c);
  CHECK_FALSE(r.ok());
  CHECK(has_tag(r, "comp-domain"));
  auto expected = oracle::failed_axioms(c);
  CHECK(std::find(expected.begin(), expected.end(), "domain") != expected.end());
}

TEST_CASE("missing composite is reported") {
  PresentedCategory c = make_1category({"x", "y", "z"}, {{"u", "x", "y"}, {"v", "y", "z"}}, {});
  CHECK(has_tag(validate_category(c), "comp-missing"));
}

TEST_CASE("idempotent 2-category satisfies every axiom") {
  PresentedCategory c = idem_category();
  CHECK(oracle::failed_axioms(c).empty());
  CHECK(validate_category(c).ok());
  const CellIndex g = c.index(2, "g");
  CHECK(c.boundary(2, g, 0, Side::Source) == c.index(0, "star"));
  CHECK(c.comp(2, 0, g, g) == g);
  CHECK(c.comp(2, 1, g, g) == g);
}

TEST_CASE("validator agrees with the brute-force oracle on perturbed tables") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    PresentedCategory base = random_1category(rng, 4, 8);
    REQUIRE(oracle::failed_axioms(base).empty());
    REQUIRE(validate_category(base).ok());
    // Rebuild with one composite redirected.
    auto rows = base.entries(1, 0);
    if (rows.empty()) continue;
    const CompEntry victim = rows[rng() % rows.size()];
    PresentedCategory bad(1);
    for (CellIndex x = 0; x < base.cell_count(0); ++x) bad.add_cell(0, base.name(0, x));
    for (CellIndex x = 0; x < base.cell_count(1); ++x) {
      bad.add_cell(1, base.name(1, x));
      bad.set_boundary(1, x, base.src(1, x), base.tgt(1, x));
    }
    for (CellIndex x = 0; x < base.cell_count(0); ++x) bad.set_identity(0, x, base.id(0, x));
    const CellIndex other = static_cast<CellIndex>(rng() % base.cell_count(1));
    for (const CompEntry& e : rows) bad.set_composite(1, 0, e.left, e.right, e == victim ? other : e.result);
    CHECK(validate_category(bad).ok() == oracle::failed_axioms(bad).empty());
  }
}

TEST_CASE("iterated boundaries do not depend on the path") {
  for (unsigned n = 0; n <= 3; ++n) {
    PresentedCategory g = globe(n);
    for (unsigned l = 2; l <= n; ++l)
      for (CellIndex x = 0; x < g.cell_count(l); ++x)
        for (unsigned k = 0; k + 1 < l; ++k) {
          CellIndex via_s = g.boundary(l - 1, g.src(l, x), k, Side::Source);
          CellIndex via_t = g.boundary(l - 1, g.tgt(l, x), k, Side::Source);
          CHECK(via_s == via_t);
          CHECK(g.boundary(l, x, k, Side::Source) == oracle::down(g, l, x, k, true));
          CHECK(g.boundary(l - 1, g.src(l, x), k, Side::Target) == g.boundary(l - 1, g.tgt(l, x), k, Side::Target));
        }
  }
}

TEST_CASE("parallel pair 2-category") {
  PresentedCategory c = parallel_pair_category();
  CHECK(validate_category(c).ok());
  CHECK(oracle::failed_axioms(c).empty());
  const CellIndex gamma = c.index(2, "gamma");
  CHECK(c.boundary(2, gamma, 1, Side::Source) == c.index(1, "u"));
  CHECK(c.boundary(2, gamma, 1, Side::Target) == c.index(1, "v"));

  PresentedCategory t = truncate(c, 1);
  CHECK(t.dimension() == 1);
  CHECK(t.cell_count(0) == 2);
  CHECK(t.cell_count(1) == 4);
  for (const char* name : {"u", "v", "id_x", "id_y"}) CHECK(t.find(1, name));
  CHECK(validate_category(t).ok());
}

TEST_CASE("degenerate cells") {
  PresentedCategory c = arrow_category();
  CHECK(is_degenerate(c, 1, c.index(1, "id_x")));
  CHECK_FALSE(is_degenerate(c, 1, c.index(1, "u")));
  for (CellIndex x = 0; x < c.cell_count(0); ++x) CHECK_FALSE(is_degenerate(c, 0, x));
  PresentedCategory i = idem_category();
  CHECK(is_degenerate(i, 2, i.id(1, i.index(1, "id_star"))));
  CHECK_FALSE(is_degenerate(i, 2, i.index(2, "g")));
}

TEST_CASE("truncation") {
  PresentedCategory i = idem_category();
  PresentedCategory t = truncate(i, 1);
  CHECK(t.cell_count(0) == 1);
  CHECK(t.cell_count(1) == 1);
  CHECK(truncate(i, 2) == i);
  CHECK(validate_category(t).ok());
}

TEST_CASE("functor validation") {
  auto arrow = std::make_shared<const PresentedCategory>(arrow_category());
  CHECK(validate_functor(identity_functor(arrow)).ok());

  auto point = std::make_shared<const PresentedCategory>(terminal_category(1));
  OmegaFunctor collapse = functor_from_names(arrow, point,
                                             {{{"x", "star"}, {"y", "star"}},
                                              {{"id_x", "id_star"}, {"id_y", "id_star"}, {"u", "id_star"}}});
  CHECK(validate_functor(collapse).ok());
  // Hand check of the three 1-cells: every image is id_star, whose
  // boundaries are star, and id_star *0 id_star = id_star.
  for (CellIndex h = 0; h < arrow->cell_count(1); ++h) {
    CellIndex img = collapse(1, h);
    CHECK(point->src(1, img) == collapse(0, arrow->src(1, h)));
    CHECK(point->tgt(1, img) == collapse(0, arrow->tgt(1, h)));
  }

  auto two = std::make_shared<const PresentedCategory>(
      make_1category({"p", "q"}, {{"w", "p", "q"}}, {}));
  OmegaFunctor bad = functor_from_names(arrow, two,
                                        {{{"x", "q"}, {"y", "p"}},
                                         {{"id_x", "id_q"}, {"id_y", "id_p"}, {"u", "w"}}});
  auto r = validate_functor(bad);
  CHECK_FALSE(r.ok());
  CHECK(has_tag(r, "source-square"));

  CHECK_THROWS_AS(functor_from_names(arrow, point, {{{"x", "star"}}, {}}), SchemaError);
}

TEST_CASE("functor composition preserves validity") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    auto a = std::make_shared<const PresentedCategory>(random_1category(rng, 4, 8));
    auto b = std::make_shared<const PresentedCategory>(random_1category(rng, 4, 8));
    auto c = std::make_shared<const PresentedCategory>(random_1category(rng, 4, 8));
    OmegaFunctor f = random_functor(rng, a, b);
    OmegaFunctor g = random_functor(rng, b, c);
    REQUIRE(validate_functor(f).ok());
    REQUIRE(validate_functor(g).ok());
    CHECK(validate_functor(compose(g, f)).ok());
  }
}

TEST_CASE("globes") {
  PresentedCategory g0 = globe(0);
  CHECK(g0.dimension() == 0);
  CHECK(g0.total_cells() == 1);

  PresentedCategory g1 = globe(1);
  CHECK(g1.cell_count(0) == 2);
  CHECK(g1.cell_count(1) == 3);
  CHECK(nondegenerate(g1, 1) == 1);

  for (unsigned n = 0; n <= 3; ++n) {
    PresentedCategory g = globe(n);
    CHECK(validate_category(g).ok());
    for (unsigned l = 0; l < n; ++l) CHECK(nondegenerate(g, l) == 2);
    CHECK(nondegenerate(g, n) == 1);
  }
}

TEST_CASE("composable pairs") {
  PresentedCategory p = composable_pair(1, 0);
  CHECK(validate_category(p).ok());
  // Free category on a -> b -> c: three objects, three identities, two
  // generators and one composite.
  PresentedCategory expected = path_category({"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}});
  CHECK(p.cell_count(0) == expected.cell_count(0));
  CHECK(p.cell_count(1) == expected.cell_count(1));
  CHECK(p.total_cells() == 9);
  CHECK(nondegenerate(p, 1) == 3);

  // Vertically: x, y, x *1 y. Horizontally the four whiskerings of x and y
  // by the identities on the other side's boundary arrows appear as well.
  for (auto [k, top] : {std::pair{0u, 7u}, {1u, 3u}}) {
    PresentedCategory q = composable_pair(2, k);
    CHECK(validate_category(q).ok());
    CHECK(nondegenerate(q, 2) == top);
  }
}
