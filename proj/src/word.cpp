#include "polyconduche/word.hpp"

#include <cctype>

#include "polyconduche/errors.hpp"

namespace polyconduche {

Word Word::slice(std::size_t begin, std::size_t end) const {
  return Word{{tokens.begin() + static_cast<std::ptrdiff_t>(begin),
               tokens.begin() + static_cast<std::ptrdiff_t>(end)}};
}

std::size_t Word::comp_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) n += t.kind == TokenKind::Comp;
  return n;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.tokens.reserve(a.length() + b.length());
  out.tokens.insert(out.tokens.end(), a.tokens.begin(), a.tokens.end());
  out.tokens.insert(out.tokens.end(), b.tokens.begin(), b.tokens.end());
  return out;
}

Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

Word composite(const Word& left, unsigned k, const Word& right) {
  Word out;
  out.tokens.reserve(left.length() + right.length() + 3);
  out.tokens.push_back(SymbolToken::lparen());
  out.tokens.insert(out.tokens.end(), left.tokens.begin(), left.tokens.end());
  out.tokens.push_back(SymbolToken::comp(k));
  out.tokens.insert(out.tokens.end(), right.tokens.begin(), right.tokens.end());
  out.tokens.push_back(SymbolToken::rparen());
  return out;
}

Word generator_atom(std::string name) {
  return Word{{SymbolToken::lparen(), SymbolToken::generator(std::move(name)), SymbolToken::rparen()}};
}

Word identity_atom(std::string cell) {
  return Word{{SymbolToken::lparen(), SymbolToken::identity(std::move(cell)), SymbolToken::rparen()}};
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
// '|' is accepted after the first character so that pair-encoded cell names
// produced by pullbacks and slices can appear in words.
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '|'; }

}  // namespace

Word tokenize(std::string_view text) {
  Word word;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      word.tokens.push_back(SymbolToken::lparen());
      ++i;
    } else if (c == ')') {
      word.tokens.push_back(SymbolToken::rparen());
      ++i;
    } else if (c == '*') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1 || j - i - 1 > 9)
        throw LexError(i, "malformed composition symbol '" + std::string(text.substr(i, 2)) + "'");
      word.tokens.push_back(SymbolToken::comp(static_cast<unsigned>(std::stoul(std::string(text.substr(i + 1, j - i - 1))))));
      i = j;
    } else if ((c == 'c' || c == 'i') && i + 1 < text.size() && text[i + 1] == ':') {
      std::size_t j = i + 2;
      if (j >= text.size() || !ident_start(text[j])) throw LexError(i, "expected identifier after '" + std::string(1, c) + ":'");
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string name(text.substr(i + 2, j - i - 2));
      word.tokens.push_back(c == 'c' ? SymbolToken::generator(std::move(name)) : SymbolToken::identity(std::move(name)));
      i = j;
    } else {
      throw LexError(i, std::string("unexpected character '") + c + "'");
    }
  }
  return word;
}

std::string serialize(const SymbolToken& token) {
  switch (token.kind) {
    case TokenKind::Generator: return "c:" + token.ident;
    case TokenKind::IdentityOf: return "i:" + token.ident;
    case TokenKind::Comp: return "*" + std::to_string(token.level);
    case TokenKind::LParen: return "(";
    case TokenKind::RParen: return ")";
  }
  return {};
}

std::string serialize(const Word& word) {
  std::string out;
  for (const auto& t : word.tokens) out += serialize(t);
  return out;
}

std::vector<int> paren_profile(const Word& word) {
  std::vector<int> values;
  values.reserve(word.length());
  int depth = 0;
  for (const auto& t : word.tokens) {
    if (t.kind == TokenKind::LParen) ++depth;
    if (t.kind == TokenKind::RParen) --depth;
    values.push_back(depth);
  }
  return values;
}

bool is_well_parenthesized(const Word& word, Occurrence occ) {
  if (occ.end > word.length() || occ.start >= occ.end) return false;
  if (word[occ.start].kind != TokenKind::LParen) return false;
  int depth = 0;
  for (std::size_t i = occ.start; i < occ.end; ++i) {
    if (word[i].kind == TokenKind::LParen) ++depth;
    if (word[i].kind == TokenKind::RParen) --depth;
    if (depth < 0) return false;
    if (depth == 0 && i + 1 != occ.end) return false;
  }
  return depth == 0;
}

bool is_well_parenthesized(const Word& word) { return is_well_parenthesized(word, {0, word.length()}); }

std::size_t split_point(const Word& word) {
  if (!is_well_parenthesized(word)) throw NotWellParenthesized("word is not well parenthesized: " + serialize(word));
  if (word.length() >= 2 &&
      (word[1].kind == TokenKind::Generator || word[1].kind == TokenKind::IdentityOf)) {
    if (word.length() == 3) throw NotComposite("atom has no decomposition: " + serialize(word));
    throw NotWellParenthesized("malformed atom: " + serialize(word));
  }
  if (word.length() < 2 || word[1].kind != TokenKind::LParen)
    throw NotWellParenthesized("composite must open with a parenthesized word: " + serialize(word));
  // The left half ends where the profile first comes back to 1.
  int depth = 1;
  std::size_t i = 1;
  for (; i < word.length(); ++i) {
    if (word[i].kind == TokenKind::LParen) ++depth;
    if (word[i].kind == TokenKind::RParen) --depth;
    if (depth == 1) break;
  }
  std::size_t comp = i + 1;
  if (comp >= word.length() || word[comp].kind != TokenKind::Comp)
    throw NotWellParenthesized("missing composition symbol: " + serialize(word));
  if (!is_well_parenthesized(word, {comp + 1, word.length() - 1}))
    throw NotWellParenthesized("right half is not well parenthesized: " + serialize(word));
  return comp;
}

Split split_parenthesized(const Word& word) {
  std::size_t comp = split_point(word);
  return Split{word.slice(1, comp), word[comp].level, word.slice(comp + 1, word.length() - 1)};
}

SubwordCase parenthesized_subword_trichotomy(const Word& word, Occurrence occ) {
  if (!is_well_parenthesized(word, occ))
    throw BadOccurrence("occurrence [" + std::to_string(occ.start) + ", " + std::to_string(occ.end) +
                        ") is not a well-parenthesized subword");
  std::size_t comp = split_point(word);
  if (occ.start == 0 && occ.end == word.length()) return {SubwordCase::Whole, 0};
  if (occ.start >= 1 && occ.end <= comp) return {SubwordCase::InsideLeft, occ.start - 1};
  if (occ.start > comp && occ.end <= word.length() - 1) return {SubwordCase::InsideRight, occ.start - comp - 1};
  // Unreachable for well-parenthesized subwords of composite words.
  throw BadOccurrence("occurrence straddles both halves");
}

}  // namespace polyconduche
