#include "polyconduche/conduche.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "polyconduche/errors.hpp"
#include "polyconduche/polygraph.hpp"

namespace polyconduche {

const char* to_string(ConducheFailure::Kind k) {
  switch (k) {
    case ConducheFailure::NoLift: return "NoLift";
    case ConducheFailure::NonUniqueLift: return "NonUniqueLift";
    case ConducheFailure::KappaFail: return "KappaFail";
  }
  return "?";
}

const char* to_string(ConducheReport::Verdict v) {
  switch (v) {
    case ConducheReport::Pass: return "Pass";
    case ConducheReport::Fail: return "Fail";
    case ConducheReport::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(FiberResult::Defect d) {
  switch (d) {
    case FiberResult::None: return "None";
    case FiberResult::NotInjective: return "NotInjective";
    case FiberResult::NotSurjective: return "NotSurjective";
  }
  return "?";
}

void ConducheReport::add(ConducheFailure f) {
  failures.push_back(std::move(f));
  verdict = Fail;
}

void ConducheReport::merge(const ConducheReport& other) {
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  if (other.verdict == Fail || verdict == Fail)
    verdict = Fail;
  else if (other.verdict == Unknown)
    verdict = Unknown;
}

namespace {

void check_levels(const OmegaFunctor& f, unsigned n, unsigned k) {
  if (k >= n) throw LevelError("need k < n, got k = " + std::to_string(k) + ", n = " + std::to_string(n));
  if (n > f.source->dimension() || n > f.target->dimension())
    throw LevelError("level " + std::to_string(n) + " exceeds a dimension of the functor");
}

template <class Span>
std::vector<std::pair<CellIndex, CellIndex>> sorted(const Span& s) {
  std::vector<std::pair<CellIndex, CellIndex>> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

ConducheReport check_nabla(const OmegaFunctor& f, unsigned n, unsigned k) {
  check_levels(f, n, k);
  const PresentedCategory& C = *f.source;
  const PresentedCategory& D = *f.target;
  ConducheReport report;
  for (CellIndex x = 0; x < C.cell_count(n); ++x) {
    const auto ups = sorted(C.factorizations(n, k, x));
    for (auto [y1, y2] : sorted(D.factorizations(n, k, f(n, x)))) {
      std::vector<std::pair<CellIndex, CellIndex>> lifts;
      for (auto [x1, x2] : ups)
        if (f(n, x1) == y1 && f(n, x2) == y2) lifts.emplace_back(x1, x2);
      if (lifts.size() == 1) continue;
      ConducheFailure fail{lifts.empty() ? ConducheFailure::NoLift : ConducheFailure::NonUniqueLift, n, k, x, y1, y2,
                           {}};
      if (lifts.size() > 1) fail.lifts.assign(lifts.begin(), lifts.begin() + 2);
      report.add(std::move(fail));
    }
  }
  return report;
}

ConducheReport check_kappa(const OmegaFunctor& f, unsigned n, unsigned k) {
  check_levels(f, n, k);
  const PresentedCategory& C = *f.source;
  const PresentedCategory& D = *f.target;
  ConducheReport report;
  for (CellIndex x = 0; x < C.cell_count(n); ++x) {
    const CellIndex fx = f(n, x);
    const CellIndex y = D.boundary(n, fx, k, Side::Source);
    if (D.identity_to(k, y, n) != fx) continue;
    const CellIndex xs = C.boundary(n, x, k, Side::Source);
    if (C.identity_to(k, xs, n) == x && f(k, xs) == y) continue;
    report.add({ConducheFailure::KappaFail, n, k, x, y, kNone, {}});
  }
  return report;
}

ConducheReport check_level(const OmegaFunctor& f, unsigned n) {
  ConducheReport report;
  for (unsigned k = 0; k < n; ++k) {
    report.merge(check_nabla(f, n, k));
    report.merge(check_kappa(f, n, k));
  }
  return report;
}

ConducheReport check_conduche(const OmegaFunctor& f, std::optional<unsigned> up_to_dim) {
  const unsigned top = up_to_dim.value_or(f.source->dimension());
  ConducheReport report;
  for (unsigned n = 1; n <= top; ++n) report.merge(check_level(f, n));
  return report;
}

std::vector<CellIndex> preimage(const OmegaFunctor& f, unsigned level, const std::vector<CellIndex>& cells) {
  std::set<CellIndex> want(cells.begin(), cells.end());
  std::vector<CellIndex> out;
  for (CellIndex x = 0; x < f.source->cell_count(level); ++x)
    if (want.count(f(level, x))) out.push_back(x);
  return out;
}

ExtensionMorphism restrict_morphism(const OmegaFunctor& f, unsigned n, const std::vector<CellIndex>& sigma_d) {
  std::vector<CellIndex> sd = sigma_d;
  std::sort(sd.begin(), sd.end());
  sd.erase(std::unique(sd.begin(), sd.end()), sd.end());
  const std::vector<CellIndex> sc = preimage(f, n + 1, sd);
  ExtensionPtr source = subset_extension(*f.source, n, sc);
  ExtensionPtr target = subset_extension(*f.target, n, sd);
  OmegaFunctor base{source->base_ptr(), target->base_ptr(), {f.map.begin(), f.map.begin() + n + 1}};
  std::vector<std::size_t> gmap;
  for (CellIndex a : sc)
    gmap.push_back(static_cast<std::size_t>(std::lower_bound(sd.begin(), sd.end(), f(n + 1, a)) - sd.begin()));
  ExtensionMorphism m{source, target, std::move(base), std::move(gmap)};
  check_extension_morphism(m);
  return m;
}

Word induced_word_map(const ExtensionMorphism& f, const Word& w) {
  const CellularExtension& C = *f.source;
  const CellularExtension& D = *f.target;
  const unsigned n = C.n();
  Word out = w;
  for (SymbolToken& t : out.tokens) {
    if (t.kind == TokenKind::Generator) {
      auto g = C.find_generator(t.ident);
      if (!g) throw UnknownGenerator("unknown generator '" + t.ident + "'");
      t.ident = D.generators()[f.generator_map[*g]].name;
    } else if (t.kind == TokenKind::IdentityOf) {
      auto x = C.base().find(n, t.ident);
      if (!x) throw UnknownGenerator("unknown cell '" + t.ident + "'");
      t.ident = D.base().name(n, f.base(n, *x));
    }
  }
  return out;
}

Term induced_term_map(const ExtensionMorphism& f, const Term& t) {
  return check_term(f.target, induced_word_map(f, t.word()));
}

// Fibers of finite functors. A target word w is summarized by its value
// d = rho_D(w) and the vector P(a) = number of source words over w with
// value a, saturated at 2. Both are computed compositionally, so words of
// equal summary are interchangeable.

namespace {

class FiberCounter {
 public:
  FiberCounter(const OmegaFunctor& f, unsigned n, std::vector<CellIndex> sigma_d)
      : f_(f), C_(*f.source), D_(*f.target), n_(n), sigma_d_(std::move(sigma_d)) {
    std::sort(sigma_d_.begin(), sigma_d_.end());
    sigma_d_.erase(std::unique(sigma_d_.begin(), sigma_d_.end()), sigma_d_.end());
    sigma_c_ = preimage(f, n + 1, sigma_d_);
  }

  // Runs up to the bound and returns the first state, in creation order,
  // that violates bijectivity at `only` (or at any cell when kNone).
  FiberResult run(std::size_t bound, CellIndex only) {
    FiberResult res;
    res.n = n_;
    by_size_.assign(bound + 1, {});
    atoms();
    for (std::size_t m = 0; m <= bound; ++m) {
      if (m > 0) grow(m);
      for (std::size_t s : by_size_[m]) {
        ++res.examined;
        if (auto bad = violation(states_[s], only)) {
          describe(res, s, *bad);
          return res;
        }
      }
    }
    return res;
  }

 private:
  struct State {
    CellIndex d;
    std::vector<std::uint8_t> p;
    Word word;
  };

  std::size_t intern(CellIndex d, std::vector<std::uint8_t> p, const Word& w, std::size_t size) {
    auto key = std::make_pair(d, p);
    auto [it, inserted] = index_.emplace(key, states_.size());
    if (inserted) states_.push_back({d, std::move(p), w});
    auto& layer = by_size_[size];
    if (!seen_at_.count({it->second, size})) {
      seen_at_.insert({it->second, size});
      layer.push_back(it->second);
    }
    return it->second;
  }

  void atoms() {
    const std::size_t cells = C_.cell_count(n_ + 1);
    for (CellIndex b : sigma_d_) {
      std::vector<std::uint8_t> p(cells, 0);
      for (CellIndex a : sigma_c_)
        if (f_(n_ + 1, a) == b) p[a] = 1;
      intern(b, std::move(p), generator_atom(D_.name(n_ + 1, b)), 0);
    }
    for (CellIndex y = 0; y < D_.cell_count(n_); ++y) {
      std::vector<std::uint8_t> p(cells, 0);
      for (CellIndex x = 0; x < C_.cell_count(n_); ++x)
        if (f_(n_, x) == y) p[C_.id(n_, x)] = std::min<int>(2, p[C_.id(n_, x)] + 1);
      intern(D_.id(n_, y), std::move(p), identity_atom(D_.name(n_, y)), 0);
    }
  }

  void grow(std::size_t m) {
    const std::size_t cells = C_.cell_count(n_ + 1);
    for (std::size_t i = 0; i < m; ++i) {
      const auto left = by_size_[i];
      const auto right = by_size_[m - 1 - i];
      for (std::size_t ls : left)
        for (unsigned k = 0; k <= n_; ++k)
          for (std::size_t rs : right) {
            const State& l = states_[ls];
            const State& r = states_[rs];
            auto d = D_.comp(n_ + 1, k, l.d, r.d);
            if (!d) continue;
            std::vector<std::uint8_t> p(cells, 0);
            for (CellIndex a1 = 0; a1 < cells; ++a1) {
              if (!l.p[a1]) continue;
              for (auto [a2, a] : C_.right_partners(n_ + 1, k, a1))
                if (r.p[a2]) p[a] = static_cast<std::uint8_t>(std::min(2, p[a] + l.p[a1] * r.p[a2]));
            }
            Word w = composite(l.word, k, r.word);
            intern(*d, std::move(p), w, m);
          }
    }
  }

  std::optional<CellIndex> violation(const State& s, CellIndex only) const {
    if (only != kNone) {
      if (f_(n_ + 1, only) == s.d && s.p[only] != 1) return only;
      return std::nullopt;
    }
    for (CellIndex a = 0; a < C_.cell_count(n_ + 1); ++a)
      if (f_(n_ + 1, a) == s.d && s.p[a] != 1) return a;
    return std::nullopt;
  }

  void describe(FiberResult& res, std::size_t s, CellIndex a) {
    const State& st = states_[s];
    res.verdict = ConducheReport::Fail;
    res.cell = a;
    res.image = serialize(st.word);
    if (st.p[a] == 0) {
      res.defect = FiberResult::NotSurjective;
      res.witness = {res.image};
      return;
    }
    res.defect = FiberResult::NotInjective;
    ExtensionPtr ext = subset_extension(D_, n_, sigma_d_);
    Term t = check_term(ext, st.word);
    for (const Word& w : lifts(t, t.root(), a, 2)) res.witness.push_back(serialize(w));
  }

  // Source words over the subterm at `node` with value a, at most `limit`.
  std::vector<Word> lifts(const Term& t, int node, CellIndex a, std::size_t limit) const {
    const TermNode& nd = t.nodes()[node];
    std::vector<Word> out;
    switch (nd.kind) {
      case TermNode::Gen: {
        const CellIndex b = sigma_d_[nd.payload];
        for (CellIndex x : sigma_c_)
          if (x == a && f_(n_ + 1, x) == b) out.push_back(generator_atom(C_.name(n_ + 1, x)));
        break;
      }
      case TermNode::Id:
        for (CellIndex x = 0; x < C_.cell_count(n_); ++x)
          if (f_(n_, x) == nd.payload && C_.id(n_, x) == a) out.push_back(identity_atom(C_.name(n_, x)));
        break;
      case TermNode::Comp:
        for (auto [a1, a2] : sorted(C_.factorizations(n_ + 1, nd.payload, a))) {
          auto ls = lifts(t, nd.left, a1, limit);
          if (ls.empty()) continue;
          auto rs = lifts(t, nd.right, a2, limit);
          for (const Word& l : ls)
            for (const Word& r : rs) {
              if (out.size() >= limit) return out;
              out.push_back(composite(l, nd.payload, r));
            }
        }
        break;
    }
    if (out.size() > limit) out.resize(limit);
    return out;
  }

  const OmegaFunctor& f_;
  const PresentedCategory& C_;
  const PresentedCategory& D_;
  unsigned n_;
  std::vector<CellIndex> sigma_d_, sigma_c_;
  std::vector<State> states_;
  std::map<std::pair<CellIndex, std::vector<std::uint8_t>>, std::size_t> index_;
  std::set<std::pair<std::size_t, std::size_t>> seen_at_;
  std::vector<std::vector<std::size_t>> by_size_;
};

}  // namespace

FiberResult check_fiber_bijection(const OmegaFunctor& f, const FiberQuery& q) {
  if (q.n + 1 > f.source->dimension() || q.n + 1 > f.target->dimension())
    throw LevelError("fibers over level " + std::to_string(q.n + 1) + " need both categories of that dimension");
  FiberCounter counter(f, q.n, q.sigma_d);
  return counter.run(q.size_bound, q.a);
}

FiberResult check_fibers(const OmegaFunctor& f, std::size_t size_bound) {
  const unsigned top = std::min(f.source->dimension(), f.target->dimension());
  FiberResult last;
  for (unsigned m = 0; m < top; ++m) {
    std::vector<CellIndex> all(f.target->cell_count(m + 1));
    for (CellIndex i = 0; i < all.size(); ++i) all[i] = i;
    FiberResult r = check_fiber_bijection(f, FiberQuery{kNone, m, all, size_bound});
    last.examined += r.examined;
    if (r.verdict != ConducheReport::Pass) {
      r.examined = last.examined;
      return r;
    }
  }
  return last;
}

FiberResult check_fiber_bijection(const ExtensionMorphism& f, const Term& a, std::size_t size_bound,
                                  const SearchBounds& bounds) {
  FiberResult res;
  res.n = f.source->n();
  const Term fa = induced_term_map(f, a);

  // Fiber of a, in enumeration order.
  std::map<std::string, EquivalenceResult::Verdict> member;
  std::vector<Term> fiber;
  bool unknown = false;
  for (const Term& v : enumerate_terms(f.source, size_bound)) {
    auto r = equivalent(v, a, bounds).verdict;
    member[v.str()] = r;
    ++res.examined;
    if (r == EquivalenceResult::Witness) fiber.push_back(v);
    if (r == EquivalenceResult::Unknown) unknown = true;
  }

  // Injectivity: the first image, by first occurrence, hit twice.
  std::map<std::string, std::vector<std::size_t>> by_image;
  std::vector<std::string> image_order;
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    std::string img = serialize(induced_word_map(f, fiber[i].word()));
    auto& g = by_image[img];
    if (g.empty()) image_order.push_back(img);
    g.push_back(i);
  }
  for (const std::string& img : image_order) {
    const auto& g = by_image[img];
    if (g.size() < 2) continue;
    res.verdict = ConducheReport::Fail;
    res.defect = FiberResult::NotInjective;
    res.image = img;
    res.witness = {fiber[g[0]].str(), fiber[g[1]].str()};
    return res;
  }

  // Surjectivity: every target word in the fiber of f(a) has a preimage in
  // the fiber of a. Preimages have the same size, so they were enumerated.
  const CellularExtension& C = *f.source;
  const unsigned n = C.n();
  for (const Term& w : enumerate_terms(f.target, size_bound)) {
    ++res.examined;
    auto r = equivalent(w, fa, bounds).verdict;
    if (r == EquivalenceResult::Distinct) continue;
    if (r == EquivalenceResult::Unknown) {
      unknown = true;
      continue;
    }
    // Candidate preimages, atom by atom.
    std::vector<Word> candidates{Word{}};
    for (const SymbolToken& t : w.word().tokens) {
      std::vector<SymbolToken> options;
      if (t.kind == TokenKind::Generator) {
        const std::size_t target_gen = *f.target->find_generator(t.ident);
        for (std::size_t g = 0; g < C.generators().size(); ++g)
          if (f.generator_map[g] == target_gen) options.push_back(SymbolToken::generator(C.generators()[g].name));
      } else if (t.kind == TokenKind::IdentityOf) {
        const CellIndex y = f.target->base().index(n, t.ident);
        for (CellIndex x = 0; x < C.base().cell_count(n); ++x)
          if (f.base(n, x) == y) options.push_back(SymbolToken::identity(C.base().name(n, x)));
      } else {
        options.push_back(t);
      }
      std::vector<Word> next;
      for (const Word& c : candidates)
        for (const SymbolToken& o : options) {
          Word e = c;
          e.tokens.push_back(o);
          next.push_back(std::move(e));
        }
      candidates = std::move(next);
    }
    bool hit = false, maybe = false;
    for (const Word& c : candidates) {
      auto it = member.find(serialize(c));
      if (it == member.end()) continue;
      hit |= it->second == EquivalenceResult::Witness;
      maybe |= it->second == EquivalenceResult::Unknown;
    }
    if (hit) continue;
    if (maybe) {
      unknown = true;
      continue;
    }
    res.verdict = ConducheReport::Fail;
    res.defect = FiberResult::NotSurjective;
    res.witness = {w.str()};
    res.image = w.str();
    return res;
  }
  if (unknown) {
    res.verdict = ConducheReport::Unknown;
    res.note = "some fiber memberships could not be decided within the search bounds";
  }
  return res;
}

MovementStep lift_movement(const ExtensionMorphism& f, const ElementaryMovement& mu, const Term& u) {
  if (induced_word_map(f, u.word()) != mu.input())
    throw Stale("the image of " + u.str() + " is not the input of the movement");
  const std::size_t at = mu.prefix.length();
  const Word want = mu.output();
  for (MovementStep& s : enumerate_movements(u, mu.direction)) {
    const ElementaryMovement& m = s.movement;
    if (m.movement_case != mu.movement_case || m.prefix.length() != at) continue;
    if (induced_word_map(f, s.result.word()) != want) continue;
    return std::move(s);
  }
  throw NotLiftable(mu.movement_case, serialize(mu.redex.word()) + " -> " + serialize(mu.contractum.word()) +
                                          " over " + u.str());
}

bool is_rigid(const OmegaFunctor& f, const std::vector<std::vector<CellIndex>>& sigma_c,
              const std::vector<std::vector<CellIndex>>& sigma_d) {
  for (unsigned k = 0; k < sigma_c.size(); ++k) {
    std::set<CellIndex> allowed;
    if (k < sigma_d.size()) allowed.insert(sigma_d[k].begin(), sigma_d[k].end());
    for (CellIndex x : sigma_c[k])
      if (!allowed.count(f(k, x))) return false;
  }
  return true;
}

bool is_rigid(const ExtensionMorphism& f) {
  check_extension_morphism(f);
  return is_rigid(f.base, indecomposables(f.source->base()), indecomposables(f.target->base()));
}

}  // namespace polyconduche
