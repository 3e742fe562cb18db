#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyconduche {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public Error {
 public:
  LexError(std::size_t position, const std::string& what)
      : Error("lex error at " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class NotComposite : public Error {
 public:
  using Error::Error;
};

class NotWellParenthesized : public Error {
 public:
  using Error::Error;
};

class BadOccurrence : public Error {
 public:
  using Error::Error;
};

/// Dangling identifiers, partial maps and malformed documents.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class LevelError : public Error {
 public:
  using Error::Error;
};

class BoundaryMismatch : public Error {
 public:
  using Error::Error;
};

enum class TermFault { UnknownGenerator, UnknownCell, BoundaryMismatch, LevelOutOfRange, ShapeError };

inline const char* to_string(TermFault f) {
  switch (f) {
    case TermFault::UnknownGenerator: return "UnknownGenerator";
    case TermFault::UnknownCell: return "UnknownCell";
    case TermFault::BoundaryMismatch: return "BoundaryMismatch";
    case TermFault::LevelOutOfRange: return "LevelOutOfRange";
    case TermFault::ShapeError: return "ShapeError";
  }
  return "?";
}

/// A word that is not a term. position is the token index of the leftmost
/// failure met by a left-to-right parse; level is the composition level for
/// BoundaryMismatch.
class NotWellFormed : public Error {
 public:
  NotWellFormed(std::size_t position, TermFault reason, unsigned level = 0, const std::string& detail = {})
      : Error("not well formed at token " + std::to_string(position) + ": " + to_string(reason) +
              (reason == TermFault::BoundaryMismatch ? "(" + std::to_string(level) + ")" : std::string()) +
              (detail.empty() ? std::string() : " " + detail)),
        position_(position),
        reason_(reason),
        level_(level) {}
  std::size_t position() const { return position_; }
  TermFault reason() const { return reason_; }
  unsigned level() const { return level_; }

 private:
  std::size_t position_;
  TermFault reason_;
  unsigned level_;
};

class UndefinedComposite : public Error {
 public:
  using Error::Error;
};

class Stale : public Error {
 public:
  using Error::Error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

class UnknownObject : public Error {
 public:
  using Error::Error;
};

class NotSurjective : public Error {
 public:
  NotSurjective(unsigned level, std::string cell)
      : Error("not surjective at level " + std::to_string(level) + ": " + cell),
        level_(level),
        cell_(std::move(cell)) {}
  unsigned level() const { return level_; }
  const std::string& cell() const { return cell_; }

 private:
  unsigned level_;
  std::string cell_;
};

class NotLiftable : public Error {
 public:
  NotLiftable(int movement_case, const std::string& what)
      : Error("movement of case " + std::to_string(movement_case) + " does not lift: " + what),
        case_(movement_case) {}
  int movement_case() const { return case_; }

 private:
  int case_;
};

}  // namespace polyconduche
