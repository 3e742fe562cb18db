#pragma once

// Raw symbol sequences over the term alphabet and the parenthesis
// bookkeeping used to reason about their subwords. Nothing in here knows
// about categories; well-formedness lives in term.hpp.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polyconduche {

enum class TokenKind : unsigned char { Generator, IdentityOf, Comp, LParen, RParen };

struct SymbolToken {
  TokenKind kind = TokenKind::LParen;
  std::string ident;   // Generator and IdentityOf
  unsigned level = 0;  // Comp

  static SymbolToken generator(std::string name) { return {TokenKind::Generator, std::move(name), 0}; }
  static SymbolToken identity(std::string cell) { return {TokenKind::IdentityOf, std::move(cell), 0}; }
  static SymbolToken comp(unsigned k) { return {TokenKind::Comp, {}, k}; }
  static SymbolToken lparen() { return {TokenKind::LParen, {}, 0}; }
  static SymbolToken rparen() { return {TokenKind::RParen, {}, 0}; }

  friend bool operator==(const SymbolToken&, const SymbolToken&) = default;
  friend auto operator<=>(const SymbolToken&, const SymbolToken&) = default;
};

struct Word {
  std::vector<SymbolToken> tokens;

  std::size_t length() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const SymbolToken& operator[](std::size_t i) const { return tokens[i]; }

  /// Tokens in the half-open range [begin, end).
  Word slice(std::size_t begin, std::size_t end) const;
  /// Number of composition symbols.
  std::size_t comp_count() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);
/// "(" left "*k" right ")"
Word composite(const Word& left, unsigned k, const Word& right);
Word generator_atom(std::string name);
Word identity_atom(std::string cell);

/// Half-open token range designating a subword.
struct Occurrence {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Lexes the concrete syntax; throws LexError with the character offset.
Word tokenize(std::string_view text);
std::string serialize(const Word& word);
std::string serialize(const SymbolToken& token);

std::vector<int> paren_profile(const Word& word);
bool is_well_parenthesized(const Word& word);
/// Same test restricted to the subword [occ.start, occ.end).
bool is_well_parenthesized(const Word& word, Occurrence occ);

struct Split {
  Word left;
  unsigned k = 0;
  Word right;
};

/// Unique decomposition of "(" w1 "*k" w2 ")" with both halves well
/// parenthesized. Throws NotComposite on atoms, NotWellParenthesized otherwise.
Split split_parenthesized(const Word& word);

/// Token index of the composition symbol at the top of a composite word.
std::size_t split_point(const Word& word);

struct SubwordCase {
  enum Kind { Whole, InsideLeft, InsideRight };
  Kind kind = Whole;
  std::size_t offset = 0;  // start offset inside the designated half
  friend bool operator==(const SubwordCase&, const SubwordCase&) = default;
};

/// Locates a well-parenthesized subword of a composite word relative to its
/// two halves.
SubwordCase parenthesized_subword_trichotomy(const Word& word, Occurrence occurrence);

}  // namespace polyconduche
