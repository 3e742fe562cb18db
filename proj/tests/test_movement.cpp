#include <catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <random>

#include "polyconduche/errors.hpp"
#include "polyconduche/fixtures.hpp"
#include "polyconduche/movement.hpp"

using namespace polyconduche;

namespace {

ExtensionPtr three_loops() {
  auto base = std::make_shared<const PresentedCategory>(terminal_category(1));
  return make_extension(base, {{"a", "id_star", "id_star"}, {"b", "id_star", "id_star"}, {"d", "id_star", "id_star"}});
}

ExtensionPtr whisker_extension() {
  auto base = std::make_shared<const PresentedCategory>(
      path_category({"x", "y", "z"}, {{"w", "x", "y"}, {"u", "y", "z"}, {"v", "y", "z"}}));
  return make_extension(base, {{"gamma", "u", "v"}});
}

bool has_result(const std::vector<MovementStep>& steps, int c, Direction d, const std::string& text) {
  return std::any_of(steps.begin(), steps.end(), [&](const MovementStep& s) {
    return s.movement.movement_case == c && s.movement.direction == d && s.result.str() == text;
  });
}

MovementStep find_step(const std::vector<MovementStep>& steps, int c, Direction d, const std::string& text) {
  for (const auto& s : steps)
    if (s.movement.movement_case == c && s.movement.direction == d && s.result.str() == text) return s;
  FAIL("no such movement: " << text);
  throw;
}

// Random walk in the movement graph, staying at size <= cap.
Term walk(Term t, std::mt19937_64& rng, int steps, std::size_t cap) {
  for (int i = 0; i < steps; ++i) {
    auto moves = enumerate_movements(t, Direction::Both);
    moves.erase(std::remove_if(moves.begin(), moves.end(), [&](const MovementStep& s) { return s.result.size() > cap; }),
                moves.end());
    if (moves.empty()) break;
    t = moves[rng() % moves.size()].result;
  }
  return t;
}

// Idem as target of the two-generator extension, a and b both sent to g.
struct IdemTarget {
  PresentedCategory idem = idem_category();
  OmegaFunctor base;
  std::vector<CellIndex> phi;
  IdemTarget() {
    auto src = std::make_shared<const PresentedCategory>(terminal_category(1));
    auto tgt = std::make_shared<const PresentedCategory>(truncate(idem, 1));
    base = OmegaFunctor{src, tgt, {{0}, {0}}};
    phi = {idem.index(2, "g"), idem.index(2, "g")};
  }
};

}  // namespace

TEST_CASE("enumeration examples") {
  auto e = three_loops();
  auto steps = enumerate_movements(check_term(e, "(((c:a)*0(c:b))*0(c:d))"), Direction::Forward);
  CHECK(has_result(steps, 1, Direction::Forward, "((c:a)*0((c:b)*0(c:d)))"));

  auto eh = eh_extension();
  auto unit = enumerate_movements(check_term(eh, "((i:id_star)*1(c:a))"), Direction::Forward);
  CHECK(has_result(unit, 2, Direction::Forward, "(c:a)"));
  CHECK(enumerate_movements(check_term(eh, "(c:a)"), Direction::Forward).empty());
}

TEST_CASE("enumeration order is by case then position") {
  auto e = eh_extension();
  Term t = check_term(e, "(((i:id_star)*1(c:a))*0((c:b)*1(i:id_star)))");
  auto steps = enumerate_movements(t, Direction::Both);
  REQUIRE(!steps.empty());
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const auto& p = steps[i - 1].movement;
    const auto& q = steps[i].movement;
    CHECK(std::make_pair(p.movement_case, p.prefix.length()) <= std::make_pair(q.movement_case, q.prefix.length()));
  }
}

TEST_CASE("applying movements") {
  auto e = eh_extension();
  Term t = check_term(e, "((i:id_star)*1(c:a))");
  const auto step = find_step(enumerate_movements(t, Direction::Forward), 2, Direction::Forward, "(c:a)");
  Term r = apply_movement(t, step.movement);
  CHECK(r.str() == "(c:a)");
  CHECK(r.source() == t.source());
  CHECK(r.target() == t.target());
  CHECK_THROWS_AS(apply_movement(check_term(e, "(c:b)"), step.movement), Stale);

  Term a = check_term(e, "(c:a)");
  auto back = enumerate_movements(a, Direction::Backward);
  CHECK(has_result(back, 3, Direction::Backward, "((c:a)*1(i:id_star))"));
  CHECK(has_result(back, 2, Direction::Backward, "((i:id_star)*1(c:a))"));

  // Case 4 composes in the base: id_star *0 id_star = id_star.
  const PresentedCategory& base = e->base();
  const CellIndex i = base.index(1, "id_star");
  REQUIRE(base.comp(1, 0, i, i) == i);
  Term ii = check_term(e, "((i:id_star)*0(i:id_star))");
  const auto merge = find_step(enumerate_movements(ii, Direction::Forward), 4, Direction::Forward, "(i:id_star)");
  CHECK(apply_movement(ii, merge.movement).str() == "(i:" + base.name(1, *base.comp(1, 0, i, i)) + ")");
}

TEST_CASE("reduction") {
  auto e = eh_extension();
  CHECK(reduce(check_term(e, "((i:id_star)*1((c:a)*1(i:id_star)))")).str() == "(c:a)");
  CHECK(reduce(check_term(e, "(c:a)")).str() == "(c:a)");
  CHECK(reduce(check_term(e, "((i:id_star)*0(i:id_star))")).str() == "(i:id_star)");
}

TEST_CASE("movement invariants on random terms") {
  std::mt19937_64 rng(101);
  std::vector<ExtensionPtr> exts{eh_extension(), whisker_extension()};
  for (int i = 0; i < 150; ++i) {
    const ExtensionPtr& e = exts[i % 2];
    Term t = random_term(e, rng, rng() % 4);
    for (const MovementStep& s : enumerate_movements(t, Direction::Both)) {
      const ElementaryMovement& m = s.movement;
      CHECK(m.input() == t.word());
      CHECK(m.output() == s.result.word());
      CHECK(s.result.source() == t.source());
      CHECK(s.result.target() == t.target());
      CHECK_NOTHROW(check_term(e, s.result.word()));
      if (m.movement_case == 1 || m.movement_case == 5) CHECK(s.result.size() == t.size());
      if (m.direction == Direction::Forward && m.movement_case >= 2 && m.movement_case <= 4)
        CHECK((s.result.size() < t.size() || s.result.length() < t.length()));
    }
  }
}

TEST_CASE("two loops on an identity commute") {
  auto e = eh_extension();
  Term u = check_term(e, "((c:a)*0(c:b))");
  Term v = check_term(e, "((c:b)*0(c:a))");
  auto r = equivalent(u, v);
  REQUIRE(r.verdict == EquivalenceResult::Witness);
  REQUIRE(r.witness);
  CHECK(replay_witness(*r.witness));
  std::vector<std::string> seen;
  Term cur = u;
  for (const auto& m : r.witness->path) {
    cur = apply_movement(cur, m);
    seen.push_back(cur.str());
  }
  CHECK(cur == v);
  CHECK(std::find(seen.begin(), seen.end(), "((c:a)*1(c:b))") != seen.end());

  // Same query, same witness.
  auto again = equivalent(u, v);
  REQUIRE(again.witness);
  REQUIRE(again.witness->path.size() == r.witness->path.size());
  for (std::size_t i = 0; i < r.witness->path.size(); ++i)
    CHECK(again.witness->path[i].output() == r.witness->path[i].output());
}

TEST_CASE("distinct and trivial verdicts") {
  auto e = eh_extension();
  Term a = check_term(e, "(c:a)");
  auto r = equivalent(a, check_term(e, "(c:b)"));
  CHECK(r.verdict == EquivalenceResult::Distinct);
  auto same = equivalent(a, a);
  REQUIRE(same.verdict == EquivalenceResult::Witness);
  CHECK(same.witness->path.empty());

  auto w = whisker_extension();
  auto d = equivalent(check_term(w, "(c:gamma)"), check_term(w, "(i:u)"));
  CHECK(d.verdict == EquivalenceResult::Distinct);

  // Tight bounds give Unknown, never Distinct.
  SearchBounds tiny{0, 1, 10};
  auto u = equivalent(check_term(e, "((c:a)*0(c:b))"), check_term(e, "((c:b)*0(c:a))"), tiny);
  CHECK(u.verdict == EquivalenceResult::Unknown);
}

TEST_CASE("random walks are found again") {
  std::mt19937_64 rng(7);
  auto e = eh_extension();
  IdemTarget idem;
  int found = 0;
  for (int i = 0; i < 1000; ++i) {
    Term u = random_term(e, rng, rng() % 3);
    Term v = walk(u, rng, 1 + rng() % 3, u.size() + 1);
    auto r = equivalent(u, v);
    REQUIRE(r.verdict == EquivalenceResult::Witness);
    ++found;
    CHECK(replay_witness(*r.witness));
    // The extension to idem is constant along the path.
    const CellIndex start = extend_functor(*e, idem.idem, idem.base, idem.phi, u);
    Term cur = u;
    for (const auto& m : r.witness->path) {
      cur = apply_movement(cur, m);
      CHECK(extend_functor(*e, idem.idem, idem.base, idem.phi, cur) == start);
    }
  }
  CHECK(found == 1000);
}

TEST_CASE("evaluation is constant along witnesses") {
  std::mt19937_64 rng(9);
  auto e = whisker_extension();
  PresentedCategory model = free_category(e);
  Evaluator eval(model, *e);
  for (int i = 0; i < 200; ++i) {
    Term u = random_term(e, rng, rng() % 3);
    Term v = walk(u, rng, 1 + rng() % 3, u.size() + 1);
    auto r = equivalent(u, v);
    REQUIRE(r.verdict == EquivalenceResult::Witness);
    Term cur = u;
    for (const auto& m : r.witness->path) {
      cur = apply_movement(cur, m);
      CHECK(eval(cur) == eval(u));
    }
  }
}

TEST_CASE("equivalence is a congruence") {
  std::mt19937_64 rng(13);
  auto e = eh_extension();
  for (int i = 0; i < 40; ++i) {
    Term u1 = random_term(e, rng, rng() % 2);
    Term u2 = random_term(e, rng, rng() % 2);
    Term v1 = walk(u1, rng, 2, u1.size() + 1);
    Term v2 = walk(u2, rng, 2, u2.size() + 1);
    auto r1 = equivalent(u1, v1);
    auto r2 = equivalent(u2, v2);
    REQUIRE(r1.verdict == EquivalenceResult::Witness);
    REQUIRE(r2.verdict == EquivalenceResult::Witness);
    const unsigned k = rng() % 2;
    SearchBounds b;
    b.max_steps += r1.witness->path.size() + r2.witness->path.size();
    b.size_slack += 2;
    auto r = equivalent(compose_classes(u1, k, u2), compose_classes(v1, k, v2), b);
    CHECK(r.verdict == EquivalenceResult::Witness);
  }
}

TEST_CASE("classes") {
  auto e = eh_extension();
  Term ab = compose_classes(check_term(e, "(c:a)"), 0, check_term(e, "(c:b)"));
  CHECK(ab.str() == "((c:a)*0(c:b))");
  CHECK(class_boundary(ab, Side::Source) == e->base().index(1, "id_star"));
  CHECK(class_boundary(ab, Side::Source) == term_boundary(ab, 1, Side::Source));

  auto w = whisker_extension();
  CHECK_THROWS_AS(compose_classes(check_term(w, "(c:gamma)"), 1, check_term(w, "(c:gamma)")), BoundaryMismatch);
  CHECK_THROWS_AS(compose_classes(check_term(w, "(i:w)"), 0, check_term(w, "(c:gamma)")), BoundaryMismatch);
}

TEST_CASE("extension of functors to the free category") {
  auto e = eh_extension();
  IdemTarget t;
  const CellIndex g = t.idem.index(2, "g");
  CHECK(extend_functor(*e, t.idem, t.base, t.phi, check_term(e, "((c:a)*0(c:b))")) == *t.idem.comp(2, 0, g, g));
  CHECK(extend_functor(*e, t.idem, t.base, t.phi, check_term(e, "(i:id_star)")) ==
        t.idem.id(1, t.idem.index(1, "id_star")));
}

TEST_CASE("normal form store") {
  auto e = eh_extension();
  NormalFormStore s(e);
  auto x = s.normalize(check_term(e, "(((c:a)*1(i:id_star))*0((i:id_star)*0(c:b)))"));
  auto y = s.normalize(check_term(e, "((c:a)*0(c:b))"));
  CHECK(x == y);
  auto z = s.normalize(check_term(e, "(((c:a)*0(c:b))*0(c:a))"));
  CHECK(s.word(z) == tokenize("((c:a)*0((c:b)*0(c:a)))"));
}

TEST_CASE("free category of the whiskering extension") {
  auto e = whisker_extension();
  PresentedCategory f = free_category(e);
  REQUIRE(validate_category(f).ok());
  // Top cells: identities on the 1-cells (x, y, z ids, w, u, v, uw, vw) plus
  // gamma and its whiskering gamma *0 w.
  CHECK(f.cell_count(2) == e->base().cell_count(1) + 2);
  CHECK(f.find(2, "gamma"));
}
