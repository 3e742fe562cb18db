#include "polyconduche/term.hpp"

#include <algorithm>

#include "polyconduche/errors.hpp"

namespace polyconduche {

CellularExtension::CellularExtension(std::shared_ptr<const PresentedCategory> base, std::vector<Generator> generators)
    : base_(std::move(base)), generators_(std::move(generators)) {
  const unsigned n = base_->dimension();
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Generator& g = generators_[i];
    if (g.source >= base_->cell_count(n) || g.target >= base_->cell_count(n))
      throw SchemaError("generator '" + g.name + "' has a boundary outside the top level of the base");
    if (n >= 1 && (base_->src(n, g.source) != base_->src(n, g.target) ||
                   base_->tgt(n, g.source) != base_->tgt(n, g.target)))
      throw SchemaError("generator '" + g.name + "' has non-parallel source and target");
    if (!by_name_.emplace(g.name, i).second) throw SchemaError("duplicate generator '" + g.name + "'");
  }
}

std::optional<std::size_t> CellularExtension::find_generator(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ExtensionPtr make_extension(std::shared_ptr<const PresentedCategory> base,
                            const std::vector<std::array<std::string, 3>>& generators) {
  const unsigned n = base->dimension();
  std::vector<Generator> gens;
  for (const auto& [name, s, t] : generators) gens.push_back({name, base->index(n, s), base->index(n, t)});
  return std::make_shared<const CellularExtension>(std::move(base), std::move(gens));
}

namespace {

class TermParser {
 public:
  TermParser(const CellularExtension& e, const Word& w) : e_(e), c_(e.base()), w_(w), n_(e.n()) {}

  std::vector<TermNode> run() {
    parse();
    if (pos_ != w_.length()) throw NotWellFormed(pos_, TermFault::ShapeError, 0, "trailing tokens");
    return std::move(nodes_);
  }

 private:
  const SymbolToken& expect(TokenKind kind) {
    if (pos_ >= w_.length() || w_[pos_].kind != kind) throw NotWellFormed(pos_, TermFault::ShapeError);
    return w_[pos_++];
  }

  CellIndex bound(CellIndex x, unsigned k, Side side) const {
    return k == n_ ? x : c_.boundary(n_, x, k, side);
  }

  int parse() {
    const std::size_t begin = pos_;
    expect(TokenKind::LParen);
    if (pos_ >= w_.length()) throw NotWellFormed(pos_, TermFault::ShapeError);
    TermNode node;
    const SymbolToken& head = w_[pos_];
    if (head.kind == TokenKind::Generator) {
      auto g = e_.find_generator(head.ident);
      if (!g) throw NotWellFormed(pos_, TermFault::UnknownGenerator, 0, "'" + head.ident + "'");
      ++pos_;
      node.kind = TermNode::Gen;
      node.payload = static_cast<std::uint32_t>(*g);
      node.src = e_.generators()[*g].source;
      node.tgt = e_.generators()[*g].target;
    } else if (head.kind == TokenKind::IdentityOf) {
      auto x = c_.find(n_, head.ident);
      if (!x) throw NotWellFormed(pos_, TermFault::UnknownCell, 0, "'" + head.ident + "'");
      ++pos_;
      node.kind = TermNode::Id;
      node.payload = *x;
      node.src = node.tgt = *x;
    } else if (head.kind == TokenKind::LParen) {
      int left = parse();
      const std::size_t comp_pos = pos_;
      const unsigned k = expect(TokenKind::Comp).level;
      if (k > n_) throw NotWellFormed(comp_pos, TermFault::LevelOutOfRange);
      int right = parse();
      const TermNode& l = nodes_[left];
      const TermNode& r = nodes_[right];
      if (bound(l.src, k, Side::Source) != bound(r.tgt, k, Side::Target))
        throw NotWellFormed(comp_pos, TermFault::BoundaryMismatch, k);
      node.kind = TermNode::Comp;
      node.payload = k;
      node.left = left;
      node.right = right;
      node.size = l.size + r.size + 1;
      if (k == n_) {
        node.src = r.src;
        node.tgt = l.tgt;
      } else {
        auto s = c_.comp(n_, k, l.src, r.src);
        auto t = c_.comp(n_, k, l.tgt, r.tgt);
        if (!s || !t) throw NotWellFormed(comp_pos, TermFault::BoundaryMismatch, k, "boundary composite undefined");
        node.src = *s;
        node.tgt = *t;
      }
    } else {
      throw NotWellFormed(pos_, TermFault::ShapeError);
    }
    expect(TokenKind::RParen);
    node.begin = static_cast<std::uint32_t>(begin);
    node.end = static_cast<std::uint32_t>(pos_);
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  const CellularExtension& e_;
  const PresentedCategory& c_;
  const Word& w_;
  unsigned n_;
  std::size_t pos_ = 0;
  std::vector<TermNode> nodes_;
};

}  // namespace

Term check_term(const ExtensionPtr& ext, const Word& word) {
  Term t;
  t.nodes_ = TermParser(*ext, word).run();
  t.word_ = word;
  t.ext_ = ext;
  return t;
}

Term check_term(const ExtensionPtr& ext, std::string_view text) { return check_term(ext, tokenize(text)); }

Term Term::subterm(int node) const {
  // Post-order keeps every subtree contiguous and ending at its root.
  const TermNode& r = nodes_.at(node);
  int first = node;
  while (first > 0 && nodes_[first - 1].begin >= r.begin && nodes_[first - 1].end <= r.end) --first;
  Term t;
  t.ext_ = ext_;
  t.word_ = word_.slice(r.begin, r.end);
  t.nodes_.assign(nodes_.begin() + first, nodes_.begin() + node + 1);
  for (auto& n : t.nodes_) {
    n.begin -= r.begin;
    n.end -= r.begin;
    if (n.left >= 0) n.left -= first;
    if (n.right >= 0) n.right -= first;
  }
  return t;
}

int Term::node_at(Occurrence occ) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].begin == occ.start && nodes_[i].end == occ.end) return static_cast<int>(i);
  return -1;
}

std::variant<TermDecomposition, Atom> decompose(const Term& t) {
  const TermNode& r = t.root_node();
  switch (r.kind) {
    case TermNode::Gen: return Atom{Atom::Generator, t.extension().generators()[r.payload].name};
    case TermNode::Id: return Atom{Atom::Identity, t.extension().base().name(t.extension().n(), r.payload)};
    case TermNode::Comp: break;
  }
  return TermDecomposition{t.subterm(r.left), r.payload, t.subterm(r.right)};
}

Term substitute(const Term& u, Occurrence occ, const Term& replacement) {
  int node = u.node_at(occ);
  if (node < 0)
    throw BadOccurrence("no subterm at [" + std::to_string(occ.start) + ", " + std::to_string(occ.end) + ")");
  const TermNode& e = u.nodes()[node];
  if (e.src != replacement.source() || e.tgt != replacement.target())
    throw BoundaryMismatch("replacement " + replacement.str() + " is not parallel to the replaced subterm");
  return check_term(u.extension_ptr(), concat(u.word().slice(0, occ.start), replacement.word(),
                                              u.word().slice(occ.end, u.length())));
}

CellIndex term_boundary(const Term& t, unsigned k, Side side) {
  const unsigned n = t.extension().n();
  if (k > n) throw LevelError("term boundary level " + std::to_string(k) + " above " + std::to_string(n));
  CellIndex x = side == Side::Source ? t.source() : t.target();
  return k == n ? x : t.extension().base().boundary(n, x, k, side);
}

std::vector<std::uint32_t> generator_multiset(const Term& t) {
  std::vector<std::uint32_t> out;
  for (const auto& n : t.nodes())
    if (n.kind == TermNode::Gen) out.push_back(n.payload);
  std::sort(out.begin(), out.end());
  return out;
}

ExtensionPtr subset_extension(const PresentedCategory& c, unsigned n, const std::vector<CellIndex>& cells) {
  if (n + 1 > c.dimension()) throw LevelError("subset extension needs a level above " + std::to_string(n));
  auto base = std::make_shared<const PresentedCategory>(truncate(c, n));
  std::vector<Generator> gens;
  for (CellIndex a : cells) gens.push_back({c.name(n + 1, a), c.src(n + 1, a), c.tgt(n + 1, a)});
  return std::make_shared<const CellularExtension>(std::move(base), std::move(gens));
}

Evaluator::Evaluator(const PresentedCategory& c, const CellularExtension& e) : c_(c), n_(e.n()) {
  if (n_ + 1 > c.dimension()) throw LevelError("evaluation target lacks level " + std::to_string(n_ + 1));
  for (const auto& g : e.generators()) gen_cells_.push_back(c.index(n_ + 1, g.name));
}

CellIndex Evaluator::operator()(const Term& t) const {
  std::vector<CellIndex> value(t.nodes().size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const TermNode& n = t.nodes()[i];
    switch (n.kind) {
      case TermNode::Gen: value[i] = gen_cells_[n.payload]; break;
      case TermNode::Id: value[i] = c_.id(n_, n.payload); break;
      case TermNode::Comp: {
        auto r = c_.comp(n_ + 1, n.payload, value[n.left], value[n.right]);
        if (!r)
          throw UndefinedComposite(c_.name(n_ + 1, value[n.left]) + " *" + std::to_string(n.payload) + " " +
                                   c_.name(n_ + 1, value[n.right]));
        value[i] = *r;
      }
    }
  }
  return value.back();
}

CellIndex evaluate(const PresentedCategory& c, const Term& t) { return Evaluator(c, t.extension())(t); }

void check_extension_morphism(const ExtensionMorphism& f) {
  const auto& C = *f.source;
  const auto& D = *f.target;
  if (f.base.source->dimension() != C.n() || f.base.target->dimension() != D.n())
    throw SchemaError("base functor does not match the extension bases");
  if (f.generator_map.size() != C.generators().size()) throw SchemaError("generator map is partial");
  const unsigned n = C.n();
  for (std::size_t g = 0; g < f.generator_map.size(); ++g) {
    if (f.generator_map[g] >= D.generators().size()) throw SchemaError("generator image out of range");
    const Generator& a = C.generators()[g];
    const Generator& b = D.generators()[f.generator_map[g]];
    if (f.base(n, a.source) != b.source || f.base(n, a.target) != b.target)
      throw SchemaError("generator map does not commute with boundaries at '" + a.name + "'");
  }
}

namespace {

struct Generated {
  Word word;
  CellIndex src, tgt;
};

class RandomTerms {
 public:
  RandomTerms(const CellularExtension& e, std::mt19937_64& rng) : e_(e), c_(e.base()), n_(e.n()), rng_(rng) {}

  struct Constraint {
    unsigned k;
    CellIndex cell;
  };

  Generated gen(std::size_t size, std::optional<Constraint> want) {
    if (size == 0) return atom(want);
    const unsigned j = static_cast<unsigned>(pick(n_ + 1));
    const std::size_t s1 = pick(size);
    const std::size_t s2 = size - 1 - s1;
    Generated v, w;
    if (want && j < want->k) {
      auto f = c_.factorizations(want->k, j, want->cell);
      auto [c1, c2] = f[pick(f.size())];
      v = gen(s1, Constraint{want->k, c1});
      w = gen(s2, Constraint{want->k, c2});
    } else {
      v = gen(s1, want);
      w = gen(s2, Constraint{j, bound(v.src, j, Side::Source)});
    }
    Generated out{composite(v.word, j, w.word), kNone, kNone};
    if (j == n_) {
      out.src = w.src;
      out.tgt = v.tgt;
    } else {
      out.src = *c_.comp(n_, j, v.src, w.src);
      out.tgt = *c_.comp(n_, j, v.tgt, w.tgt);
    }
    return out;
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  CellIndex bound(CellIndex x, unsigned k, Side side) const {
    return k == n_ ? x : c_.boundary(n_, x, k, side);
  }

  Generated atom(std::optional<Constraint> want) {
    std::vector<Generated> options;
    for (const auto& g : e_.generators())
      if (!want || bound(g.target, want->k, Side::Target) == want->cell)
        options.push_back({generator_atom(g.name), g.source, g.target});
    for (CellIndex x = 0; x < c_.cell_count(n_); ++x)
      if (!want || bound(x, want->k, Side::Target) == want->cell)
        options.push_back({identity_atom(c_.name(n_, x)), x, x});
    return options.at(pick(options.size()));
  }

  const CellularExtension& e_;
  const PresentedCategory& c_;
  unsigned n_;
  std::mt19937_64& rng_;
};

}  // namespace

Term random_term(const ExtensionPtr& ext, std::mt19937_64& rng, std::size_t size) {
  RandomTerms gen(*ext, rng);
  return check_term(ext, gen.gen(size, std::nullopt).word);
}

std::vector<Term> enumerate_terms(const ExtensionPtr& ext, std::size_t max_size) {
  const unsigned n = ext->n();
  std::vector<std::vector<Term>> by_size(max_size + 1);
  for (const Generator& g : ext->generators()) by_size[0].push_back(check_term(ext, generator_atom(g.name)));
  for (CellIndex x = 0; x < ext->base().cell_count(n); ++x)
    by_size[0].push_back(check_term(ext, identity_atom(ext->base().name(n, x))));
  for (std::size_t m = 1; m <= max_size; ++m)
    for (std::size_t i = 0; i < m; ++i)
      for (const Term& l : by_size[i])
        for (unsigned k = 0; k <= n; ++k) {
          const CellIndex need = term_boundary(l, k, Side::Source);
          for (const Term& r : by_size[m - 1 - i])
            if (term_boundary(r, k, Side::Target) == need)
              by_size[m].push_back(check_term(ext, composite(l.word(), k, r.word())));
        }
  std::vector<Term> out;
  for (auto& layer : by_size)
    for (auto& t : layer) out.push_back(std::move(t));
  return out;
}

}  // namespace polyconduche
