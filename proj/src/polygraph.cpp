#include "polyconduche/polygraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "polyconduche/errors.hpp"

namespace polyconduche {

const char* to_string(BasisVerdict::Verdict v) {
  switch (v) {
    case BasisVerdict::Basis: return "Basis";
    case BasisVerdict::NotBasis: return "NotBasis";
    case BasisVerdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(BasisVerdict::Witness w) {
  switch (w) {
    case BasisVerdict::None: return "None";
    case BasisVerdict::MissingPreimage: return "MissingPreimage";
    case BasisVerdict::DisconnectedPair: return "DisconnectedPair";
  }
  return "?";
}

bool is_indecomposable(const PresentedCategory& c, unsigned level, CellIndex x) {
  if (level == 0) return true;
  if (is_degenerate(c, level, x)) return false;
  for (unsigned k = 0; k < level; ++k) {
    const CellIndex left_unit = c.identity_to(k, c.boundary(level, x, k, Side::Target), level);
    const CellIndex right_unit = c.identity_to(k, c.boundary(level, x, k, Side::Source), level);
    for (auto [x1, x2] : c.factorizations(level, k, x))
      if (x1 != left_unit && x2 != right_unit) return false;
  }
  return true;
}

std::vector<CellIndex> indecomposables(const PresentedCategory& c, unsigned level) {
  std::vector<CellIndex> out;
  for (CellIndex x = 0; x < c.cell_count(level); ++x)
    if (is_indecomposable(c, level, x)) out.push_back(x);
  return out;
}

CellSets indecomposables(const PresentedCategory& c) {
  CellSets out;
  for (unsigned l = 0; l <= c.dimension(); ++l) out.push_back(indecomposables(c, l));
  return out;
}

std::size_t default_basis_bound(const PresentedCategory& c, unsigned level) {
  std::size_t count = 0;
  for (CellIndex x = 0; x < c.cell_count(level); ++x) count += level == 0 || !is_degenerate(c, level, x);
  return std::min<std::size_t>(8, 2 * count);
}

namespace {

constexpr std::size_t kMaxNormalForms = 50000;

std::vector<CellIndex> normalized(std::vector<CellIndex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

BasisVerdict check_basis(const PresentedCategory& c, unsigned level, const std::vector<CellIndex>& sigma_in,
                         std::optional<std::size_t> size_bound, const SearchBounds& bounds) {
  const std::vector<CellIndex> sigma = normalized(sigma_in);
  BasisVerdict res;
  res.level = level;
  if (level > c.dimension()) throw LevelError("no level " + std::to_string(level));

  if (level == 0) {
    for (CellIndex x = 0; x < c.cell_count(0); ++x) {
      if (std::binary_search(sigma.begin(), sigma.end(), x)) continue;
      res.verdict = BasisVerdict::NotBasis;
      res.witness = BasisVerdict::MissingPreimage;
      res.cell = x;
      return res;
    }
    return res;
  }

  const unsigned n = level - 1;
  // Values of all words: the closure of sigma and the identities.
  std::vector<bool> reached(c.cell_count(level), false);
  std::vector<CellIndex> queue;
  auto reach = [&](CellIndex a) {
    if (!reached[a]) {
      reached[a] = true;
      queue.push_back(a);
    }
  };
  for (CellIndex a : sigma) reach(a);
  for (CellIndex x = 0; x < c.cell_count(n); ++x) reach(c.id(n, x));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const CellIndex a = queue[i];
    for (unsigned k = 0; k <= n; ++k) {
      for (auto [b, r] : c.right_partners(level, k, a)) {
        if (reached[b]) reach(r);
      }
      for (CellIndex b = 0; b < c.cell_count(level); ++b)
        if (reached[b])
          if (auto r = c.comp(level, k, b, a)) reach(*r);
    }
  }
  for (CellIndex a = 0; a < reached.size(); ++a) {
    if (reached[a]) continue;
    res.verdict = BasisVerdict::NotBasis;
    res.witness = BasisVerdict::MissingPreimage;
    res.cell = a;
    return res;
  }

  // Connectivity on normal forms, by increasing size.
  const std::size_t bound = size_bound.value_or(default_basis_bound(c, level));
  res.size_bound = bound;
  ExtensionPtr ext = subset_extension(c, n, sigma);
  NormalFormStore store(ext);
  std::unordered_map<NormalFormStore::Id, CellIndex> value;
  std::vector<std::vector<NormalFormStore::Id>> layers(bound + 1);
  std::map<CellIndex, NormalFormStore::Id> root;
  std::set<CellIndex> unresolved;

  // Returns false once a disconnected pair is proven.
  auto visit = [&](NormalFormStore::Id x, CellIndex a, std::size_t size) -> bool {
    if (value.count(x)) return true;
    value.emplace(x, a);
    layers[size].push_back(x);
    auto [it, first] = root.emplace(a, x);
    if (first) return true;
    const NormalFormStore::Id r = it->second;
    if (store.multiset(r) != store.multiset(x) || n == 0) {
      // Different generator multisets, or distinct normal forms over a
      // 0-category: provably inequivalent.
      res.verdict = BasisVerdict::NotBasis;
      res.witness = BasisVerdict::DisconnectedPair;
      res.cell = a;
      res.w1 = serialize(store.word(r));
      res.w2 = serialize(store.word(x));
      return false;
    }
    auto eq = equivalent(store.term(r), store.term(x), bounds);
    if (eq.verdict != EquivalenceResult::Witness && !unresolved.count(a)) {
      unresolved.insert(a);
      if (res.w1.empty()) {
        res.cell = a;
        res.w1 = serialize(store.word(r));
        res.w2 = serialize(store.word(x));
      }
    }
    return true;
  };

  for (std::size_t g = 0; g < sigma.size(); ++g)
    if (!visit(store.generator(g), sigma[g], 0)) return res;
  for (CellIndex x = 0; x < c.cell_count(n); ++x)
    if (!visit(store.identity(x), c.id(n, x), 0)) return res;
  for (std::size_t m = 1; m <= bound; ++m) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto left = layers[i];
      const auto right = layers[m - 1 - i];
      for (NormalFormStore::Id l : left)
        for (unsigned k = 0; k <= n; ++k)
          for (NormalFormStore::Id r : right) {
            auto x = store.comp(l, k, r);
            if (!x) continue;
            auto a = c.comp(level, k, value.at(l), value.at(r));
            if (!a) throw UndefinedComposite("composite missing from the table at level " + std::to_string(level));
            if (!visit(*x, *a, m)) return res;
            if (value.size() > kMaxNormalForms) {
              res.verdict = BasisVerdict::Unknown;
              res.note = "normal form enumeration exceeded " + std::to_string(kMaxNormalForms) + " words at size " +
                         std::to_string(m);
              return res;
            }
          }
    }
  }
  if (!unresolved.empty()) {
    res.verdict = BasisVerdict::Unknown;
    res.unresolved.assign(unresolved.begin(), unresolved.end());
    res.note = "some preimages could not be connected within the search bounds";
  }
  return res;
}

FreenessReport check_free(const PresentedCategory& c, const CellSets& sigma, std::optional<std::size_t> size_bound,
                          const SearchBounds& bounds) {
  FreenessReport rep;
  for (unsigned l = 0; l <= c.dimension(); ++l) {
    const std::vector<CellIndex> s = l < sigma.size() ? normalized(sigma[l]) : std::vector<CellIndex>{};
    BasisVerdict v = check_basis(c, l, s, size_bound, bounds);
    rep.matches_indecomposables.push_back(s == indecomposables(c, l));
    if (v.verdict == BasisVerdict::NotBasis)
      rep.verdict = BasisVerdict::NotBasis;
    else if (v.verdict == BasisVerdict::Unknown && rep.verdict == BasisVerdict::Basis)
      rep.verdict = BasisVerdict::Unknown;
    rep.levels.push_back(std::move(v));
  }
  return rep;
}

CellSets transfer_basis(const OmegaFunctor& f, const CellSets& sigma_d) {
  CellSets out;
  for (unsigned l = 0; l <= f.source->dimension(); ++l) {
    std::set<CellIndex> want;
    if (l < sigma_d.size()) want.insert(sigma_d[l].begin(), sigma_d[l].end());
    std::vector<CellIndex> level;
    for (CellIndex x = 0; x < f.source->cell_count(l); ++x)
      if (want.count(f(l, x))) level.push_back(x);
    out.push_back(std::move(level));
  }
  return out;
}

CellSets image_basis(const OmegaFunctor& f, const CellSets& sigma_c) {
  for (unsigned l = 0; l <= f.target->dimension(); ++l) {
    std::vector<bool> hit(f.target->cell_count(l), false);
    if (l <= f.source->dimension())
      for (CellIndex x = 0; x < f.source->cell_count(l); ++x) hit[f(l, x)] = true;
    for (CellIndex y = 0; y < hit.size(); ++y)
      if (!hit[y]) throw NotSurjective(l, f.target->name(l, y));
  }
  CellSets out;
  for (unsigned l = 0; l < sigma_c.size(); ++l) {
    std::vector<CellIndex> level;
    for (CellIndex x : sigma_c[l]) level.push_back(f(l, x));
    out.push_back(normalized(std::move(level)));
  }
  return out;
}

}  // namespace polyconduche
