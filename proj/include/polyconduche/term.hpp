#pragma once

// Well-formed words over a cellular extension.

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "polyconduche/category.hpp"
#include "polyconduche/word.hpp"

namespace polyconduche {

struct Generator {
  std::string name;
  CellIndex source = kNone;  // top-level cells of the base
  CellIndex target = kNone;
};

/// A base n-category together with formal (n+1)-generators with parallel
/// boundaries.
class CellularExtension {
 public:
  CellularExtension(std::shared_ptr<const PresentedCategory> base, std::vector<Generator> generators);

  const PresentedCategory& base() const { return *base_; }
  const std::shared_ptr<const PresentedCategory>& base_ptr() const { return base_; }
  unsigned n() const { return base_->dimension(); }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> find_generator(std::string_view name) const;

 private:
  std::shared_ptr<const PresentedCategory> base_;
  std::vector<Generator> generators_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

using ExtensionPtr = std::shared_ptr<const CellularExtension>;

/// Generators given by names of top-level base cells.
ExtensionPtr make_extension(std::shared_ptr<const PresentedCategory> base,
                            const std::vector<std::array<std::string, 3>>& generators);

struct TermNode {
  enum Kind : unsigned char { Gen, Id, Comp };
  Kind kind = Gen;
  std::uint32_t payload = 0;  // generator index, base cell, or composition level
  int left = -1;
  int right = -1;
  std::uint32_t begin = 0;  // token range of the subterm
  std::uint32_t end = 0;
  CellIndex src = kNone;  // n-source and n-target
  CellIndex tgt = kNone;
  std::uint32_t size = 0;
};

class Term {
 public:
  const Word& word() const { return word_; }
  const CellularExtension& extension() const { return *ext_; }
  const ExtensionPtr& extension_ptr() const { return ext_; }
  const std::vector<TermNode>& nodes() const { return nodes_; }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  const TermNode& root_node() const { return nodes_.back(); }

  CellIndex source() const { return root_node().src; }
  CellIndex target() const { return root_node().tgt; }
  std::size_t size() const { return root_node().size; }
  std::size_t length() const { return word_.length(); }
  std::string str() const { return serialize(word_); }

  /// The subterm rooted at a node, without re-checking.
  Term subterm(int node) const;
  /// Node whose token range is exactly the occurrence, or -1.
  int node_at(Occurrence occ) const;

  friend bool operator==(const Term& a, const Term& b) { return a.word_ == b.word_; }

 private:
  friend Term check_term(const ExtensionPtr& ext, const Word& word);
  Word word_;
  ExtensionPtr ext_;
  std::vector<TermNode> nodes_;  // post-order, root last
};

/// Recognizes T[E]; throws NotWellFormed otherwise.
Term check_term(const ExtensionPtr& ext, const Word& word);
Term check_term(const ExtensionPtr& ext, std::string_view text);

struct TermDecomposition {
  Term left;
  unsigned k = 0;
  Term right;
};

struct Atom {
  enum Kind { Generator, Identity } kind = Generator;
  std::string name;
};

std::variant<TermDecomposition, Atom> decompose(const Term& t);

/// Replaces the subterm at the occurrence by a parallel term.
Term substitute(const Term& u, Occurrence occurrence, const Term& replacement);

/// k-source or k-target of a term, k <= n.
CellIndex term_boundary(const Term& t, unsigned k, Side side);

/// Generator multiset as sorted generator indices.
std::vector<std::uint32_t> generator_multiset(const Term& t);

/// E_S = (truncation of C at n, S, s^n, t^n) for S a set of (n+1)-cells.
/// Generators are named after the cells.
ExtensionPtr subset_extension(const PresentedCategory& c, unsigned n, const std::vector<CellIndex>& cells);

/// Evaluates terms over an extension of the form built by subset_extension
/// into the ambient category.
class Evaluator {
 public:
  Evaluator(const PresentedCategory& c, const CellularExtension& e);
  /// Throws UndefinedComposite when a needed table row is missing.
  CellIndex operator()(const Term& t) const;
  CellIndex generator_cell(std::size_t g) const { return gen_cells_.at(g); }

 private:
  const PresentedCategory& c_;
  unsigned n_;
  std::vector<CellIndex> gen_cells_;
};

CellIndex evaluate(const PresentedCategory& c, const Term& t);

/// A morphism of cellular extensions: a functor between the bases plus a
/// generator map compatible with boundaries. It induces a functor between
/// the free categories of the two extensions.
struct ExtensionMorphism {
  ExtensionPtr source;
  ExtensionPtr target;
  OmegaFunctor base;
  std::vector<std::size_t> generator_map;
};

/// Throws SchemaError unless the generator map commutes with boundaries.
void check_extension_morphism(const ExtensionMorphism& f);

/// Random well-formed term with exactly `size` composition symbols;
/// composability is enforced while generating.
Term random_term(const ExtensionPtr& ext, std::mt19937_64& rng, std::size_t size);

/// Every term of size at most max_size, ordered by size, then left size,
/// left term, level and right term. Atoms list generators before identities.
std::vector<Term> enumerate_terms(const ExtensionPtr& ext, std::size_t max_size);

}  // namespace polyconduche
