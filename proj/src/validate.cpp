#include <algorithm>
#include <map>

#include "polyconduche/category.hpp"
#include "polyconduche/errors.hpp"

namespace polyconduche {

namespace {

class Reporter {
 public:
  Reporter(const PresentedCategory& c, ValidationReport& r) : c_(c), r_(r) {}
  void add(std::string axiom, std::initializer_list<std::pair<unsigned, CellIndex>> cells,
           std::string note = {}) {
    Violation v{std::move(axiom), {}};
    for (auto [l, x] : cells) v.witness.push_back(c_.name(l, x));
    if (!note.empty()) v.witness.push_back(std::move(note));
    r_.violations.push_back(std::move(v));
  }

 private:
  const PresentedCategory& c_;
  ValidationReport& r_;
};

std::string star(unsigned k) { return "*" + std::to_string(k); }

}  // namespace

ValidationReport validate_category(const PresentedCategory& c) {
  c.check_schema();
  ValidationReport report;
  Reporter rep(c, report);
  const unsigned N = c.dimension();

  for (unsigned l = 2; l <= N; ++l)
    for (CellIndex x = 0; x < c.cell_count(l); ++x) {
      CellIndex s = c.src(l, x), t = c.tgt(l, x);
      if (c.src(l - 1, s) != c.src(l - 1, t) || c.tgt(l - 1, s) != c.tgt(l - 1, t))
        rep.add("globular", {{l, x}});
    }

  for (unsigned l = 0; l < N; ++l) {
    std::map<CellIndex, CellIndex> seen;
    for (CellIndex x = 0; x < c.cell_count(l); ++x) {
      CellIndex i = c.id(l, x);
      if (c.src(l + 1, i) != x || c.tgt(l + 1, i) != x) rep.add("axiom3", {{l, x}, {l + 1, i}});
      auto [it, fresh] = seen.emplace(i, x);
      if (!fresh) rep.add("identity-injective", {{l, it->second}, {l, x}});
    }
  }

  for (unsigned l = 1; l <= N; ++l) {
    const std::size_t count = c.cell_count(l);
    for (unsigned k = 0; k < l; ++k) {
      // Rows must sit exactly on the composable pairs.
      std::vector<CellIndex> sk(count), tk(count);
      std::map<CellIndex, std::vector<CellIndex>> by_target;
      for (CellIndex x = 0; x < count; ++x) {
        sk[x] = c.boundary(l, x, k, Side::Source);
        tk[x] = c.boundary(l, x, k, Side::Target);
        by_target[tk[x]].push_back(x);
      }
      const auto rows = c.entries(l, k);
      for (const auto& e : rows)
        if (sk[e.left] != tk[e.right]) rep.add("comp-domain", {{l, e.left}, {l, e.right}}, star(k));
      for (CellIndex x = 0; x < count; ++x) {
        auto it = by_target.find(sk[x]);
        if (it == by_target.end()) continue;
        for (CellIndex y : it->second)
          if (!c.comp(l, k, x, y)) rep.add("comp-missing", {{l, x}, {l, y}}, star(k));
      }

      for (const auto& e : rows) {
        if (sk[e.left] != tk[e.right]) continue;
        for (unsigned j = 0; j <= k; ++j) {
          if (c.boundary(l, e.result, j, Side::Source) != c.boundary(l, e.right, j, Side::Source) ||
              c.boundary(l, e.result, j, Side::Target) != c.boundary(l, e.left, j, Side::Target))
            rep.add("axiom1", {{l, e.left}, {l, e.right}}, star(k) + " at level " + std::to_string(j));
        }
        for (unsigned j = k + 1; j < l; ++j) {
          for (Side side : {Side::Source, Side::Target}) {
            auto want = c.comp(j, k, c.boundary(l, e.left, j, side), c.boundary(l, e.right, j, side));
            if (!want || *want != c.boundary(l, e.result, j, side))
              rep.add("axiom2", {{l, e.left}, {l, e.right}},
                      star(k) + (side == Side::Source ? " source" : " target") + " at level " + std::to_string(j));
          }
        }
        for (auto [z, yz] : c.right_partners(l, k, e.right)) {
          auto lhs = c.comp(l, k, e.result, z);
          auto rhs = c.comp(l, k, e.left, yz);
          if (lhs && rhs && *lhs != *rhs) rep.add("axiom4", {{l, e.left}, {l, e.right}, {l, z}}, star(k));
        }
      }

      for (CellIndex x = 0; x < count; ++x) {
        auto right = c.comp(l, k, x, c.identity_to(k, sk[x], l));
        auto left = c.comp(l, k, c.identity_to(k, tk[x], l), x);
        if ((right && *right != x) || (left && *left != x)) rep.add("axiom5", {{l, x}}, star(k));
      }
    }
  }

  // Identities of composites, k < j < l.
  for (unsigned l = 2; l <= N; ++l)
    for (unsigned j = 1; j < l; ++j)
      for (unsigned k = 0; k < j; ++k)
        for (const auto& e : c.entries(j, k)) {
          auto got = c.comp(l, k, c.identity_to(j, e.left, l), c.identity_to(j, e.right, l));
          if (got && *got != c.identity_to(j, e.result, l))
            rep.add("axiom6", {{j, e.left}, {j, e.right}}, star(k) + " lifted to level " + std::to_string(l));
        }

  // Interchange: ((x *k y) *j (z *k t)) = ((x *j z) *k (y *j t)), k < j < l.
  for (unsigned l = 2; l <= N; ++l)
    for (unsigned j = 1; j < l; ++j)
      for (unsigned k = 0; k < j; ++k)
        for (const auto& e : c.entries(l, j)) {
          CellIndex x = e.left, z = e.right;
          for (auto [y, xy] : c.right_partners(l, k, x))
            for (auto [t, zt] : c.right_partners(l, k, z)) {
              if (c.boundary(l, y, j, Side::Source) != c.boundary(l, t, j, Side::Target)) continue;
              auto lhs = c.comp(l, j, xy, zt);
              auto yt = c.comp(l, j, y, t);
              if (!lhs || !yt) continue;
              auto rhs = c.comp(l, k, e.result, *yt);
              if (rhs && *lhs != *rhs)
                rep.add("axiom7", {{l, x}, {l, y}, {l, z}, {l, t}}, star(k) + " " + star(j));
            }
        }
  return report;
}

bool is_degenerate(const PresentedCategory& c, unsigned level, CellIndex x) {
  if (level == 0) return false;
  return c.id(level - 1, c.src(level, x)) == x;
}

PresentedCategory truncate(const PresentedCategory& c, unsigned n) {
  if (n > c.dimension()) throw LevelError("cannot truncate above the dimension");
  PresentedCategory out(n);
  for (unsigned l = 0; l <= n; ++l)
    for (CellIndex x = 0; x < c.cell_count(l); ++x) out.add_cell(l, c.name(l, x));
  for (unsigned l = 0; l <= n; ++l)
    for (CellIndex x = 0; x < c.cell_count(l); ++x) {
      if (l > 0) out.set_boundary(l, x, c.src(l, x), c.tgt(l, x));
      if (l < n) out.set_identity(l, x, c.id(l, x));
    }
  for (unsigned l = 1; l <= n; ++l)
    for (unsigned k = 0; k < l; ++k)
      for (const auto& e : c.entries(l, k)) out.set_composite(l, k, e.left, e.right, e.result);
  return out;
}

PresentedCategory raise_dimension(const PresentedCategory& c, unsigned dimension) {
  if (dimension <= c.dimension()) return c;
  const unsigned N = c.dimension();
  PresentedCategory out(dimension);
  for (unsigned l = 0; l <= N; ++l)
    for (CellIndex x = 0; x < c.cell_count(l); ++x) out.add_cell(l, c.name(l, x));
  for (unsigned l = N + 1; l <= dimension; ++l)
    for (CellIndex x = 0; x < c.cell_count(N); ++x) out.add_cell(l, c.name(N, x));
  for (unsigned l = 0; l <= dimension; ++l) {
    const unsigned base = std::min(l, N);
    for (CellIndex x = 0; x < c.cell_count(base); ++x) {
      if (l > N) out.set_boundary(l, x, x, x);
      else if (l > 0) out.set_boundary(l, x, c.src(l, x), c.tgt(l, x));
      if (l < N) out.set_identity(l, x, c.id(l, x));
      else if (l < dimension) out.set_identity(l, x, x);
    }
  }
  for (unsigned l = 1; l <= N; ++l)
    for (unsigned k = 0; k < l; ++k)
      for (const auto& e : c.entries(l, k)) out.set_composite(l, k, e.left, e.right, e.result);
  // Above N every cell is an identity on a top cell: 1x *k 1y = 1(x *k y).
  for (unsigned l = N + 1; l <= dimension; ++l)
    for (unsigned k = 0; k < l; ++k) {
      if (k >= N) {
        for (CellIndex x = 0; x < c.cell_count(N); ++x) out.set_composite(l, k, x, x, x);
      } else {
        for (const auto& e : c.entries(N, k)) out.set_composite(l, k, e.left, e.right, e.result);
      }
    }
  return out;
}

ValidationReport validate_functor(const OmegaFunctor& f) {
  if (!f.source || !f.target) throw SchemaError("functor without source or target");
  const auto& C = *f.source;
  const auto& D = *f.target;
  if (C.dimension() != D.dimension()) throw SchemaError("functor between categories of different dimension");
  if (f.map.size() != C.dimension() + 1) throw SchemaError("functor map does not cover every level");
  for (unsigned l = 0; l <= C.dimension(); ++l) {
    if (f.map[l].size() != C.cell_count(l)) throw SchemaError("functor map is partial at level " + std::to_string(l));
    for (CellIndex y : f.map[l])
      if (y >= D.cell_count(l)) throw SchemaError("functor image out of range at level " + std::to_string(l));
  }
  ValidationReport report;
  auto add = [&](std::string axiom, unsigned l, std::vector<CellIndex> xs, std::string note = {}) {
    Violation v{std::move(axiom), {}};
    for (CellIndex x : xs) v.witness.push_back(C.name(l, x));
    if (!note.empty()) v.witness.push_back(std::move(note));
    report.violations.push_back(std::move(v));
  };
  for (unsigned l = 0; l <= C.dimension(); ++l)
    for (CellIndex x = 0; x < C.cell_count(l); ++x) {
      if (l > 0) {
        if (f(l - 1, C.src(l, x)) != D.src(l, f(l, x))) add("source-square", l, {x});
        if (f(l - 1, C.tgt(l, x)) != D.tgt(l, f(l, x))) add("target-square", l, {x});
      }
      if (l < C.dimension() && f(l + 1, C.id(l, x)) != D.id(l, f(l, x))) add("identity", l, {x});
    }
  for (unsigned l = 1; l <= C.dimension(); ++l)
    for (unsigned k = 0; k < l; ++k)
      for (const auto& e : C.entries(l, k)) {
        auto img = D.comp(l, k, f(l, e.left), f(l, e.right));
        if (!img || *img != f(l, e.result)) add("composite", l, {e.left, e.right}, star(k));
      }
  return report;
}

OmegaFunctor identity_functor(std::shared_ptr<const PresentedCategory> c) {
  OmegaFunctor f{c, c, {}};
  for (unsigned l = 0; l <= c->dimension(); ++l) {
    std::vector<CellIndex> m(c->cell_count(l));
    for (CellIndex x = 0; x < m.size(); ++x) m[x] = x;
    f.map.push_back(std::move(m));
  }
  return f;
}

OmegaFunctor compose(const OmegaFunctor& g, const OmegaFunctor& f) {
  if (f.target.get() != g.source.get() && !(*f.target == *g.source))
    throw SchemaError("functors are not composable");
  OmegaFunctor h{f.source, g.target, f.map};
  for (unsigned l = 0; l < h.map.size(); ++l)
    for (auto& y : h.map[l]) y = g(l, y);
  return h;
}

OmegaFunctor functor_from_names(std::shared_ptr<const PresentedCategory> source,
                                std::shared_ptr<const PresentedCategory> target,
                                const std::vector<std::map<std::string, std::string>>& map) {
  OmegaFunctor f{source, target, {}};
  for (unsigned l = 0; l <= source->dimension(); ++l) {
    std::vector<CellIndex> m(source->cell_count(l), kNone);
    if (l < map.size())
      for (const auto& [from, to] : map[l]) m[source->index(l, from)] = target->index(l, to);
    for (CellIndex x = 0; x < m.size(); ++x)
      if (m[x] == kNone)
        throw SchemaError("functor map misses '" + source->name(l, x) + "' at level " + std::to_string(l));
    f.map.push_back(std::move(m));
  }
  return f;
}

OmegaFunctor equalize_dimensions(const OmegaFunctor& f, unsigned dimension) {
  const unsigned ns = f.source->dimension();
  if (ns >= dimension && f.target->dimension() >= dimension) return f;
  auto source = std::make_shared<const PresentedCategory>(raise_dimension(*f.source, dimension));
  auto target = std::make_shared<const PresentedCategory>(raise_dimension(*f.target, dimension));
  OmegaFunctor g{source, target, f.map};
  for (unsigned l = ns + 1; l <= dimension; ++l) {
    std::vector<CellIndex> m(source->cell_count(l));
    for (CellIndex x = 0; x < m.size(); ++x) m[x] = target->identity_to(ns, f(ns, x), l);
    g.map.push_back(std::move(m));
  }
  return g;
}

}  // namespace polyconduche
