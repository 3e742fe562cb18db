#include <catch_amalgamated.hpp>

#include <random>

#include "polyconduche/errors.hpp"
#include "polyconduche/word.hpp"

using namespace polyconduche;

namespace {

// Straight from the definition: count parentheses at positions <= i.
std::vector<int> naive_profile(const Word& w) {
  std::vector<int> out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    int open = 0, close = 0;
    for (std::size_t j = 0; j <= i; ++j) {
      open += w[j].kind == TokenKind::LParen;
      close += w[j].kind == TokenKind::RParen;
    }
    out.push_back(open - close);
  }
  return out;
}

// Random composite word built bottom up; the split point is recorded.
Word random_word(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0)
    return rng() % 2 ? generator_atom(std::string(1, static_cast<char>('a' + rng() % 4)))
                     : identity_atom("x" + std::to_string(rng() % 3));
  return composite(random_word(rng, depth - 1), static_cast<unsigned>(rng() % 3), random_word(rng, depth - 1));
}

// All well-parenthesized occurrences by brute force over every range.
std::vector<Occurrence> all_occurrences(const Word& w) {
  std::vector<Occurrence> out;
  for (std::size_t i = 0; i < w.length(); ++i)
    for (std::size_t j = i + 1; j <= w.length(); ++j)
      if (is_well_parenthesized(w.slice(i, j))) out.push_back({i, j});
  return out;
}

}  // namespace

TEST_CASE("tokenize atoms and composites") {
  Word w = tokenize("(c:a)");
  REQUIRE(w.length() == 3);
  CHECK(w[0] == SymbolToken::lparen());
  CHECK(w[1] == SymbolToken::generator("a"));
  CHECK(w[2] == SymbolToken::rparen());

  Word c = tokenize("((c:a)*0(c:b))");
  CHECK(c.length() == 9);
  CHECK(c[8].kind == TokenKind::RParen);
  CHECK(c[4] == SymbolToken::comp(0));
  CHECK(tokenize("(i:x *12 i:y)")[2].level == 12);
}

TEST_CASE("tokenize rejects malformed composition symbols") {
  try {
    tokenize("(c:a *?)");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(tokenize("(c:)"), LexError);
  CHECK_THROWS_AS(tokenize("(x:a)"), LexError);
  CHECK_THROWS_AS(tokenize("(c:a) #"), LexError);
}

TEST_CASE("serialize normalizes whitespace and round trips") {
  CHECK(serialize(Word{{SymbolToken::lparen(), SymbolToken::identity("x"), SymbolToken::rparen()}}) == "(i:x)");
  CHECK(serialize(tokenize("( ( c:a ) *0 ( c:b ) )")) == "((c:a)*0(c:b))");
  CHECK(serialize(Word{}).empty());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng, 4);
    CHECK(tokenize(serialize(w)) == w);
  }
}

TEST_CASE("parenthesis profile") {
  CHECK(paren_profile(tokenize("(c:a)")) == std::vector<int>{1, 1, 0});
  CHECK(paren_profile(tokenize("((c:a)*0(c:b))")) == std::vector<int>{1, 2, 2, 1, 1, 2, 2, 1, 0});
  CHECK(paren_profile(tokenize(")(")) == std::vector<int>{-1, 0});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng, 5);
    CHECK(paren_profile(w) == naive_profile(w));
  }
}

TEST_CASE("well parenthesized words") {
  CHECK(is_well_parenthesized(tokenize("((c:a)*0(c:b))")));
  CHECK_FALSE(is_well_parenthesized(tokenize("(c:a)(c:b)")));
  CHECK_FALSE(is_well_parenthesized(Word{}));
  CHECK_FALSE(is_well_parenthesized(tokenize(")(")));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 5);
    REQUIRE(is_well_parenthesized(w));
    CHECK(w.length() >= 2);
    CHECK(w[0].kind == TokenKind::LParen);
    CHECK(w[w.length() - 1].kind == TokenKind::RParen);
  }
}

TEST_CASE("split_parenthesized") {
  Split s = split_parenthesized(tokenize("((c:a)*0(c:b))"));
  CHECK(serialize(s.left) == "(c:a)");
  CHECK(s.k == 0);
  CHECK(serialize(s.right) == "(c:b)");
  CHECK_THROWS_AS(split_parenthesized(tokenize("(c:a)")), NotComposite);
  CHECK_THROWS_AS(split_parenthesized(tokenize("((c:a)(c:b))")), NotWellParenthesized);
  CHECK_THROWS_AS(split_parenthesized(tokenize("((c:a)*0(c:b)")), NotWellParenthesized);

  // Oracle: the left half ends where the profile first returns to 1.
  Word w = tokenize("(((c:a)*1(c:b))*0(i:u))");
  auto p = naive_profile(w);
  std::size_t end = 1;
  while (p[end] != 1) ++end;
  Split t = split_parenthesized(w);
  CHECK(t.left == w.slice(1, end + 1));
  CHECK(serialize(t.left) == "((c:a)*1(c:b))");
  CHECK(t.k == 0);
  CHECK(serialize(t.right) == "(i:u)");
}

TEST_CASE("split is a partial inverse of composite") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    Word w = random_word(rng, 5);
    if (w.length() == 3) continue;
    Split s = split_parenthesized(w);
    CHECK(composite(s.left, s.k, s.right) == w);
  }
}

TEST_CASE("subword trichotomy examples") {
  Word w = tokenize("((c:a)*0(c:b))");
  CHECK(parenthesized_subword_trichotomy(w, {0, 9}) == SubwordCase{SubwordCase::Whole, 0});
  CHECK(parenthesized_subword_trichotomy(w, {1, 4}) == SubwordCase{SubwordCase::InsideLeft, 0});
  CHECK(parenthesized_subword_trichotomy(w, {5, 8}) == SubwordCase{SubwordCase::InsideRight, 0});
  CHECK_THROWS_AS(parenthesized_subword_trichotomy(w, {4, 8}), BadOccurrence);
}

TEST_CASE("subword trichotomy is exhaustive and exclusive") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 10000) {
    Word w = random_word(rng, 4);
    if (w.length() == 3) continue;
    Split s = split_parenthesized(w);
    const std::size_t comp = 1 + s.left.length();
    for (Occurrence occ : all_occurrences(w)) {
      bool whole = occ.start == 0 && occ.end == w.length();
      bool left = occ.start >= 1 && occ.end <= comp;
      bool right = occ.start > comp && occ.end + 1 <= w.length();
      REQUIRE(int(whole) + int(left) + int(right) == 1);
      SubwordCase c = parenthesized_subword_trichotomy(w, occ);
      if (whole) CHECK(c.kind == SubwordCase::Whole);
      if (left) CHECK(c == SubwordCase{SubwordCase::InsideLeft, occ.start - 1});
      if (right) CHECK(c == SubwordCase{SubwordCase::InsideRight, occ.start - comp - 1});
      ++checked;
    }
  }
}
