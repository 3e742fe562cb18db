#include <catch_amalgamated.hpp>

#include <random>

#include "polyconduche/errors.hpp"
#include "polyconduche/fixtures.hpp"
#include "polyconduche/movement.hpp"

using namespace polyconduche;

namespace {

ExtensionPtr arrow_extension() {
  return make_extension(std::make_shared<const PresentedCategory>(arrow_category()), {});
}

// gamma: u => v between parallel arrows y -> z, with w: x -> y to whisker by.
ExtensionPtr whisker_extension() {
  auto base = std::make_shared<const PresentedCategory>(
      path_category({"x", "y", "z"}, {{"w", "x", "y"}, {"u", "y", "z"}, {"v", "y", "z"}}));
  return make_extension(base, {{"gamma", "u", "v"}});
}

ExtensionPtr idem_extension() {
  static const PresentedCategory idem = idem_category();
  return subset_extension(idem, 1, {idem.index(2, "g")});
}

// In the idempotent category every composite involving g is g.
CellIndex model_value(const PresentedCategory& idem, const Term& t) {
  if (t.str().find("c:g") != std::string::npos) return idem.index(2, "g");
  return idem.id(1, idem.index(1, "id_star"));
}

NotWellFormed failure(const ExtensionPtr& e, const char* text) {
  try {
    check_term(e, text);
  } catch (const NotWellFormed& err) {
    return err;
  }
  FAIL("expected NotWellFormed for " << text);
  throw;
}

}  // namespace

TEST_CASE("recognizes terms of the two-generator extension") {
  auto e = eh_extension();
  Term t = check_term(e, "((c:a)*0(c:b))");
  const CellIndex id_star = e->base().index(1, "id_star");
  CHECK(t.source() == id_star);
  CHECK(t.target() == id_star);
  CHECK(t.size() == 1);
  CHECK(term_boundary(t, 0, Side::Source) == e->base().index(0, "star"));
  CHECK(term_boundary(check_term(e, "(c:a)"), 1, Side::Target) == id_star);
  CHECK_THROWS_AS(term_boundary(t, 2, Side::Source), LevelError);
}

TEST_CASE("identity atoms") {
  auto e = arrow_extension();
  Term t = check_term(e, "(i:id_x)");
  CHECK(t.source() == e->base().index(1, "id_x"));
  CHECK(t.target() == t.source());
  CHECK(t.size() == 0);
}

TEST_CASE("ill-formed words report the first failure") {
  auto e = eh_extension();
  auto lvl = failure(e, "((c:a)*2(c:b))");
  CHECK(lvl.reason() == TermFault::LevelOutOfRange);
  CHECK(lvl.position() == 4);

  auto gen = failure(e, "((c:a)*0(c:zz))");
  CHECK(gen.reason() == TermFault::UnknownGenerator);
  CHECK(gen.position() == 6);

  CHECK(failure(e, "(i:nothing)").reason() == TermFault::UnknownCell);
  CHECK(failure(e, "(c:a)*0(c:b)").reason() == TermFault::ShapeError);

  auto w = whisker_extension();
  auto mismatch = failure(w, "((c:gamma)*1(c:gamma))");
  CHECK(mismatch.reason() == TermFault::BoundaryMismatch);
  CHECK(mismatch.level() == 1);
  CHECK(mismatch.position() == 4);
  // The left half already fails, so its position wins over the outer mismatch.
  CHECK(failure(w, "(((c:gamma)*1(c:gamma))*0(c:zz))").position() == 5);
}

TEST_CASE("whiskering computes boundaries in the base") {
  auto e = whisker_extension();
  const PresentedCategory& base = e->base();
  Term t = check_term(e, "((c:gamma)*0(i:w))");
  const CellIndex u = base.index(1, "u"), v = base.index(1, "v"), w = base.index(1, "w");
  CHECK(t.source() == *base.comp(1, 0, u, w));
  CHECK(t.target() == *base.comp(1, 0, v, w));
  // Against the finite free 2-category.
  PresentedCategory model = free_category(e);
  REQUIRE(validate_category(model).ok());
  Evaluator eval(model, *e);
  CellIndex cell = eval(t);
  CHECK(model.src(2, cell) == t.source());
  CHECK(model.tgt(2, cell) == t.target());
}

TEST_CASE("decomposition") {
  auto e = eh_extension();
  auto d = std::get<TermDecomposition>(decompose(check_term(e, "((c:a)*0(c:b))")));
  CHECK(d.left.str() == "(c:a)");
  CHECK(d.k == 0);
  CHECK(d.right.str() == "(c:b)");
  auto a = std::get<Atom>(decompose(check_term(e, "(c:a)")));
  CHECK(a.kind == Atom::Generator);
  CHECK(a.name == "a");
  CHECK(std::get<Atom>(decompose(check_term(e, "(i:id_star)"))).kind == Atom::Identity);

  const char* text = "(((c:a)*1(c:b))*0((c:a)*1(c:b)))";
  auto dd = std::get<TermDecomposition>(decompose(check_term(e, text)));
  Split s = split_parenthesized(tokenize(text));
  CHECK(dd.left.word() == s.left);
  CHECK(dd.right.word() == s.right);
  CHECK(dd.k == s.k);
  CHECK(dd.left == check_term(e, s.left));
  CHECK(dd.left.str() == "((c:a)*1(c:b))");
  CHECK(dd.right == dd.left);
}

TEST_CASE("decompose then reassemble on random terms") {
  std::mt19937_64 rng(41);
  std::vector<ExtensionPtr> exts{eh_extension(), whisker_extension(), idem_extension()};
  for (int i = 0; i < 10000; ++i) {
    const ExtensionPtr& e = exts[i % exts.size()];
    Term t = random_term(e, rng, rng() % 9);
    REQUIRE(is_well_parenthesized(t.word()));
    auto d = decompose(t);
    if (auto* p = std::get_if<TermDecomposition>(&d)) {
      REQUIRE(term_boundary(p->left, p->k, Side::Source) == term_boundary(p->right, p->k, Side::Target));
      CHECK(composite(p->left.word(), p->k, p->right.word()) == t.word());
    } else {
      CHECK(t.size() == 0);
    }
  }
}

TEST_CASE("well-parenthesized subwords of terms are terms") {
  std::mt19937_64 rng(43);
  auto e = whisker_extension();
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(e, rng, 1 + rng() % 6);
    const Word& w = t.word();
    for (std::size_t a = 0; a < w.length(); ++a)
      for (std::size_t b = a + 1; b <= w.length(); ++b)
        if (is_well_parenthesized(w, {a, b})) CHECK_NOTHROW(check_term(e, w.slice(a, b)));
  }
}

TEST_CASE("substitution") {
  auto e = eh_extension();
  Term u = check_term(e, "((c:a)*0(c:b))");
  Term r = check_term(e, "((c:a)*1(i:id_star))");
  Term s = substitute(u, {1, 4}, r);
  CHECK(s.str() == "(((c:a)*1(i:id_star))*0(c:b))");
  CHECK(s.source() == check_term(e, s.word()).source());
  CHECK(substitute(u, {0, u.length()}, u) == u);
  CHECK(substitute(u, {1, 4}, check_term(e, "(c:b)")).str() == "((c:b)*0(c:b))");
  CHECK_THROWS_AS(substitute(u, {3, 6}, r), BadOccurrence);

  auto w = whisker_extension();
  auto base = w->base_ptr();
  auto two = make_extension(base, {{"gamma", "u", "v"}, {"delta", "v", "u"}});
  Term g = check_term(two, "((c:gamma)*0(i:w))");
  CHECK_THROWS_AS(substitute(g, {1, 4}, check_term(two, "(c:delta)")), BoundaryMismatch);
}

TEST_CASE("evaluation in the idempotent category") {
  PresentedCategory idem = idem_category();
  auto e = idem_extension();
  const CellIndex g = idem.index(2, "g");
  CHECK(evaluate(idem, check_term(e, "((c:g)*0(c:g))")) == *idem.comp(2, 0, g, g));
  CHECK(evaluate(idem, check_term(e, "((c:g)*1(c:g))")) == *idem.comp(2, 1, g, g));
  CHECK(evaluate(idem, check_term(e, "((c:g)*0(c:g))")) == g);
  CHECK(evaluate(idem, check_term(e, "(i:id_star)")) == idem.id(1, idem.index(1, "id_star")));
}

TEST_CASE("evaluation is compatible with substitution") {
  PresentedCategory idem = idem_category();
  auto e = idem_extension();
  Evaluator eval(idem, *e);
  std::mt19937_64 rng(47);
  int used = 0;
  for (int i = 0; i < 500; ++i) {
    Term u = random_term(e, rng, rng() % 6);
    const TermNode& node = u.nodes()[rng() % u.nodes().size()];
    Term sub = u.subterm(static_cast<int>(&node - u.nodes().data()));
    Term rep = random_term(e, rng, rng() % 4);
    if (rep.source() != sub.source() || rep.target() != sub.target()) continue;
    Term v = substitute(u, {node.begin, node.end}, rep);
    if (eval(rep) == eval(sub)) {
      CHECK(eval(v) == eval(u));
      ++used;
    }
    CHECK(eval(v) == model_value(idem, v));
  }
  CHECK(used > 50);
}
